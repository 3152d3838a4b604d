#pragma once

// Partial-order law checks over a finite fragment. Transitivity is checked through
// down-sets and up-sets: for every b, every a <= b and every c >= b must satisfy a <= c.

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "forcelab/level_map.hpp"

namespace forcelab {

struct OrderViolation {
  std::string law;  // "reflexive", "antisymmetric", "transitive"
  std::size_t a = 0, b = 0, c = 0;
};

struct OrderLawReport {
  std::uint64_t checks = 0;
  std::uint64_t violation_count = 0;
  std::vector<OrderViolation> violations;  // first few only

  bool pass() const { return violation_count == 0; }
  void add(OrderViolation v) {
    ++violation_count;
    if (violations.size() < 32) violations.push_back(std::move(v));
  }
};

namespace detail {

template <class T, class Leq>
void check_around(std::span<const T> elems, std::size_t b, std::span<const std::size_t> below,
                  std::span<const std::size_t> above, std::span<const std::size_t> same, Leq& leq,
                  OrderLawReport& rep) {
  std::vector<std::size_t> down, up;
  for (auto a : below) {
    ++rep.checks;
    if (leq(elems[a], elems[b])) down.push_back(a);
  }
  for (auto c : above) {
    ++rep.checks;
    if (leq(elems[b], elems[c])) up.push_back(c);
  }
  for (auto a : same) {
    if (a == b) continue;
    ++rep.checks;
    if (leq(elems[a], elems[b]) && leq(elems[b], elems[a]) && !(elems[a] == elems[b])) {
      rep.add({"antisymmetric", a, b, b});
    }
  }
  for (auto a : down) {
    for (auto c : up) {
      ++rep.checks;
      if (!leq(elems[a], elems[c])) rep.add({"transitive", a, b, c});
    }
  }
}

}  // namespace detail

/// All three laws over every element of the fragment.
template <class T, class Leq>
OrderLawReport check_partial_order(std::span<const T> elems, Leq leq) {
  OrderLawReport rep;
  std::vector<std::size_t> all(elems.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;
  for (std::size_t b = 0; b < elems.size(); ++b) {
    ++rep.checks;
    if (!leq(elems[b], elems[b])) rep.add({"reflexive", b, b, b});
    detail::check_around(elems, b, all, all, all, leq, rep);
  }
  return rep;
}

/// Same laws for orders whose first clause is "f of the left side is contained in f of
/// the right side" and which are invariant under value permutations. Only the middle
/// element b of each triple ranges over elements with canonical f; a ranges over the
/// f-buckets below it and c over those above it.
template <class T, class FOf, class Leq>
OrderLawReport check_partial_order_by_f(std::span<const T> elems, FOf f_of, Leq leq) {
  OrderLawReport rep;
  std::map<LevelMap, std::vector<std::size_t>> buckets;
  for (std::size_t k = 0; k < elems.size(); ++k) {
    ++rep.checks;
    if (!leq(elems[k], elems[k])) rep.add({"reflexive", k, k, k});
    buckets[f_of(elems[k])].push_back(k);
  }
  for (const auto& [fb, bs] : buckets) {
    bool canonical = true;
    for (std::size_t i = 0; canonical && i < fb.height(); ++i) {
      const auto level = fb.level(i);
      for (std::size_t r = 0; r < level.size(); ++r) canonical = canonical && level[r] == r;
    }
    if (!canonical) continue;
    std::vector<std::size_t> below, above;
    for (const auto& [f, ks] : buckets) {
      if (f.is_prefix_of(fb)) below.insert(below.end(), ks.begin(), ks.end());
      if (fb.is_prefix_of(f)) above.insert(above.end(), ks.begin(), ks.end());
    }
    for (auto b : bs) detail::check_around(elems, b, below, above, std::span<const std::size_t>(bs), leq, rep);
  }
  return rep;
}

}  // namespace forcelab
