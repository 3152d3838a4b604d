#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "forcelab/trees.hpp"

namespace forcelab {

/// A labeling f of the first `height()` levels of B, stored per level and indexed by
/// node rank. Valid when every level i is a bijection from lev_i B onto a_i.
class LevelMap {
 public:
  LevelMap() = default;
  explicit LevelMap(std::vector<std::vector<std::uint64_t>> levels) : levels_(std::move(levels)) {}

  /// Level i sends the node of rank r to r.
  static LevelMap identity(std::size_t height);

  std::size_t height() const { return levels_.size(); }
  std::span<const std::uint64_t> level(std::size_t i) const { return levels_[i]; }

  /// f(node); node.size() must be below height().
  std::uint64_t operator()(const BSeq& node) const { return levels_[node.size()][node.rank()]; }
  /// f(node restricted to i), without materializing the prefix.
  std::uint64_t at_prefix(const BSeq& node, std::size_t i) const {
    return levels_[i][node.prefix_rank(i)];
  }

  bool is_valid() const;
  /// f is contained in other: other agrees with f on every level of f.
  bool is_prefix_of(const LevelMap& other) const;
  LevelMap truncated(std::size_t height) const;
  void push_level(std::vector<std::uint64_t> level) { levels_.push_back(std::move(level)); }

  friend bool operator==(const LevelMap&, const LevelMap&) = default;
  friend auto operator<=>(const LevelMap&, const LevelMap&) = default;

 private:
  std::vector<std::vector<std::uint64_t>> levels_;
};

/// Every valid LevelMap of the given height, each level running through the
/// permutations of a_i in lexicographic order.
std::vector<LevelMap> enumerate_level_maps(std::size_t height, std::uint64_t budget = kDefaultBudget);

/// prod_{i < height} (2^i)!, saturating.
std::uint64_t count_level_maps(std::size_t height);

}  // namespace forcelab
