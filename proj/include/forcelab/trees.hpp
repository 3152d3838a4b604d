#pragma once

// The two trees everything else is built from:
//   T, whose level n is a_0 x ... x a_{n-1} with a_i = {0, ..., 2^i - 1};
//   B, the full binary tree.
// Both are only ever materialized one level at a time.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/flat_map.hpp>
#include <boost/container/flat_set.hpp>
#include <boost/container/small_vector.hpp>

namespace forcelab {

// Labels stand in for ordinals below kappa; only finitely many ever occur.
using Label = std::uint64_t;

template <class V>
using LabelMap = boost::container::flat_map<Label, V>;
using LabelSet = boost::container::flat_set<Label>;

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 20;
inline constexpr std::uint32_t kMaxLevel = 62;

/// |a_i| = 2^i. Throws InputTooLarge for i > 62.
std::uint64_t level_size(std::uint32_t i);

/// Smallest k with 2^k >= n (0 for n <= 1).
std::uint32_t ceil_log2(std::uint64_t n);

/// A node of T: a finite sequence with values[i] < 2^i.
class TSeq {
 public:
  using value_type = std::uint64_t;
  using storage = boost::container::small_vector<value_type, 8>;

  TSeq() = default;
  TSeq(std::initializer_list<value_type> values) : values_(values) {}
  explicit TSeq(std::span<const value_type> values)
      : values_(values.begin(), values.end()) {}

  static TSeq zeros(std::size_t n);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  value_type operator[](std::size_t i) const { return values_[i]; }
  value_type& operator[](std::size_t i) { return values_[i]; }
  void push_back(value_type v) { values_.push_back(v); }
  void resize(std::size_t n) { values_.resize(n); }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  /// Every entry lies in its level alphabet.
  bool is_valid() const;
  TSeq prefix(std::size_t n) const;
  bool is_prefix_of(const TSeq& longer) const;

  friend bool operator==(const TSeq& a, const TSeq& b) { return a.values_ == b.values_; }
  friend std::strong_ordering operator<=>(const TSeq& a, const TSeq& b);

 private:
  storage values_;
};

/// A node of B: a finite 0/1 sequence.
class BSeq {
 public:
  using storage = boost::container::small_vector<std::uint8_t, 16>;

  BSeq() = default;
  BSeq(std::initializer_list<std::uint8_t> bits) : bits_(bits) {}

  /// Parses "0101"; throws PreconditionError on any other character.
  static BSeq parse(std::string_view bits);
  static BSeq zeros(std::size_t n);
  /// The node of length n whose binary reading (first bit most significant) is rank.
  static BSeq from_rank(std::size_t n, std::uint64_t rank);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
  void push_back(std::uint8_t bit) { bits_.push_back(bit); }

  auto begin() const { return bits_.begin(); }
  auto end() const { return bits_.end(); }

  bool is_valid() const;
  BSeq prefix(std::size_t n) const;
  bool is_prefix_of(const BSeq& longer) const;
  /// Position of this node in the lexicographic order of its level.
  std::uint64_t rank() const;
  /// Rank of the length-n prefix, without materializing it.
  std::uint64_t prefix_rank(std::size_t n) const;
  std::string to_string() const;

  friend bool operator==(const BSeq& a, const BSeq& b) { return a.bits_ == b.bits_; }
  friend std::strong_ordering operator<=>(const BSeq& a, const BSeq& b);

 private:
  storage bits_;
};

/// lev_n T in lexicographic order. Throws BudgetExceeded when |lev_n T| > budget.
std::vector<TSeq> enumerate_t_level(std::uint32_t n, std::uint64_t budget = kDefaultBudget);

/// lev_n B in lexicographic order.
std::vector<BSeq> enumerate_b_level(std::uint32_t n, std::uint64_t budget = kDefaultBudget);

/// |lev_n T| = 2^(n(n-1)/2), saturating at UINT64_MAX.
std::uint64_t t_level_count(std::uint32_t n);

/// True iff for every i in [k, n) the values m(i), m in family, are pairwise distinct.
/// Throws PreconditionError when the lengths differ or k exceeds the common length.
bool disjoint_above(std::span<const TSeq> family, std::size_t k);

/// Advances seq to the next element of lev_n T restricted to positions >= fixed,
/// lexicographically. Returns false after the last one (seq is then reset).
bool next_t_extension(TSeq& seq, std::size_t fixed);

namespace detail {

// Small sorted-duplicate check used by every disjointness test.
template <class Range>
bool all_distinct(const Range& values) {
  boost::container::small_vector<std::uint64_t, 16> buf(values.begin(), values.end());
  std::sort(buf.begin(), buf.end());
  return std::adjacent_find(buf.begin(), buf.end()) == buf.end();
}

}  // namespace detail

}  // namespace forcelab
