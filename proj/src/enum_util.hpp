#pragma once

#include <cstdint>
#include <vector>

#include "forcelab/trees.hpp"
#include "saturating.hpp"

namespace forcelab::detail {

// All k-tuples over {0..n-1}, lexicographic.
template <class Fn>
void for_each_tuple(std::size_t k, std::uint64_t n, Fn&& fn) {
  if (n == 0 && k > 0) return;
  std::vector<std::uint64_t> idx(k, 0);
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i-- > 0) {
      if (++idx[i] < n) break;
      idx[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

// All k-tuples of pairwise distinct elements of {0..n-1}, lexicographic.
template <class Fn>
void for_each_injection(std::size_t k, std::uint64_t n, Fn&& fn) {
  if (k > n) return;
  for_each_tuple(k, n, [&](const std::vector<std::uint64_t>& idx) {
    if (all_distinct(idx)) fn(idx);
  });
}

// Subsets of `sorted` as vectors, by increasing bitmask.
inline std::vector<std::vector<Label>> all_subsets(const std::vector<Label>& sorted) {
  std::vector<std::vector<Label>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << sorted.size()); ++mask) {
    std::vector<Label> s;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      if (mask >> k & 1u) s.push_back(sorted[k]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

inline std::uint64_t falling_factorial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = sat_mul(r, n - i);
  return r;
}

inline std::uint64_t sat_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) r = sat_mul(r, b);
  return r;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace forcelab::detail
