#pragma once

// Slow, literal re-implementations of the definitions, written without the library's
// helpers, for cross-checking.

#include <set>
#include <vector>

#include "forcelab/iteration_p.hpp"
#include "forcelab/iteration_q.hpp"
#include "forcelab/q0.hpp"

namespace oracle {

using namespace forcelab;

inline std::vector<std::uint64_t> pow2_upto(std::size_t n) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::uint64_t{1} << i);
  return out;
}

// Every i in [from, to) has pairwise distinct values among seqs.
inline bool distinct_columns(const std::vector<TSeq>& seqs, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i) {
    std::set<std::uint64_t> seen;
    for (const auto& s : seqs) {
      if (!seen.insert(s[i]).second) return false;
    }
  }
  return true;
}

inline bool leq_q0(const Q0Condition& p, const Q0Condition& q) {
  if (p.ht > q.ht) return false;
  std::vector<TSeq> above;
  for (const auto& [a, t] : p.entries) {
    if (!q.entries.contains(a)) return false;
    const auto& u = q.entries.at(a);
    for (std::size_t i = 0; i < p.ht; ++i) {
      if (u[i] != t[i]) return false;
    }
    above.push_back(u);
  }
  return distinct_columns(above, p.ht, q.ht);
}

// Node x restricted to i, read through f.
inline std::uint64_t f_at(const LevelMap& f, const BSeq& x, std::size_t i) { return f(x.prefix(i)); }

inline bool f_contained(const LevelMap& f, const LevelMap& g) {
  if (f.height() > g.height()) return false;
  for (std::size_t i = 0; i < f.height(); ++i) {
    for (const auto& node : enumerate_b_level(static_cast<std::uint32_t>(i))) {
      if (f(node) != g(node)) return false;
    }
  }
  return true;
}

inline bool leq_stp_q(const StpQPair& a, const StpQPair& b) {
  if (!oracle::leq_q0(a.p, b.p)) return false;
  if (!f_contained(a.q.f, b.q.f)) return false;
  const auto m = a.q.f.height();
  const auto n = b.q.f.height();
  for (const auto& [alpha, x] : a.q.x) {
    if (!b.q.x.contains(alpha)) return false;
    const auto& y = b.q.x.at(alpha);
    if (y.size() < x.size() || !(y.prefix(x.size()) == x)) return false;
    const auto& t = b.p.entries.at(alpha);
    for (std::size_t i = m; i < n; ++i) {
      if (t[i] != f_at(b.q.f, y, i)) return false;
    }
  }
  return true;
}

inline bool leq_stp_p(const StpPPair& a, const StpPPair& b) {
  if (!f_contained(a.f, b.f)) return false;
  for (const auto& [alpha, e] : a.entries) {
    if (!b.entries.contains(alpha)) return false;
    const auto& d = b.entries.at(alpha);
    const auto lo = e.x.size();
    const auto hi = d.x.size();
    if (hi < lo) return false;
    if (!(d.x.prefix(lo) == e.x) || !(d.t.prefix(lo) == e.t)) return false;
    for (std::size_t i = lo; i < hi; ++i) {
      if (d.t[i] != f_at(b.f, d.x, i)) return false;
    }
  }
  return true;
}

// Compatibility by enumerating every condition over the union of domains up to height h.
inline bool compatible_by_search(const Q0Condition& p, const Q0Condition& q, std::uint32_t h) {
  LabelSet dom = p.domain();
  for (auto l : q.domain()) dom.insert(l);
  for (const auto& r : enumerate_q0(dom, h, std::uint64_t{1} << 24)) {
    if (oracle::leq_q0(p, r) && oracle::leq_q0(q, r)) return true;
  }
  return false;
}

inline std::uint64_t product_of_pow2(std::size_t n) {
  std::uint64_t out = 1;
  for (auto v : pow2_upto(n)) out *= v;
  return out;
}

inline std::uint64_t factorial(std::uint64_t n) {
  std::uint64_t out = 1;
  for (std::uint64_t k = 2; k <= n; ++k) out *= k;
  return out;
}

}  // namespace oracle
