#include "forcelab/level_map.hpp"

#include <numeric>

#include "forcelab/errors.hpp"
#include "saturating.hpp"

namespace forcelab {

LevelMap LevelMap::identity(std::size_t height) {
  LevelMap f;
  for (std::size_t i = 0; i < height; ++i) {
    std::vector<std::uint64_t> level(level_size(static_cast<std::uint32_t>(i)));
    std::iota(level.begin(), level.end(), 0);
    f.levels_.push_back(std::move(level));
  }
  return f;
}

bool LevelMap::is_valid() const {
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (i > kMaxLevel || levels_[i].size() != level_size(static_cast<std::uint32_t>(i))) return false;
    std::vector<bool> seen(levels_[i].size(), false);
    for (auto v : levels_[i]) {
      if (v >= seen.size() || seen[v]) return false;
      seen[v] = true;
    }
  }
  return true;
}

bool LevelMap::is_prefix_of(const LevelMap& other) const {
  return height() <= other.height() && std::equal(levels_.begin(), levels_.end(), other.levels_.begin());
}

LevelMap LevelMap::truncated(std::size_t height) const {
  LevelMap f;
  f.levels_.assign(levels_.begin(), levels_.begin() + std::min(height, levels_.size()));
  return f;
}

std::uint64_t count_level_maps(std::size_t height) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < height; ++i) {
    if (i > 20) return std::numeric_limits<std::uint64_t>::max();
    const auto n = level_size(static_cast<std::uint32_t>(i));
    for (std::uint64_t k = 2; k <= n; ++k) total = detail::sat_mul(total, k);
  }
  return total;
}

std::vector<LevelMap> enumerate_level_maps(std::size_t height, std::uint64_t budget) {
  if (count_level_maps(height) > budget) {
    throw BudgetExceeded("enumerate_level_maps: height " + std::to_string(height) + " exceeds budget");
  }
  std::vector<LevelMap> out{LevelMap{}};
  for (std::size_t i = 0; i < height; ++i) {
    std::vector<LevelMap> next;
    std::vector<std::uint64_t> perm(level_size(static_cast<std::uint32_t>(i)));
    for (const auto& base : out) {
      std::iota(perm.begin(), perm.end(), 0);
      do {
        LevelMap f = base;
        f.push_level(perm);
        next.push_back(std::move(f));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace forcelab
