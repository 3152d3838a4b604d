#pragma once

// Standard part of the two-step iteration Q0 * Q1: pairs (p, q) where p is a Q0
// condition and q = (f, x) labels the binary tree and places one branch per label.

#include <cstdint>
#include <vector>

#include "forcelab/level_map.hpp"
#include "forcelab/q0.hpp"

namespace forcelab {

struct Q1Part {
  LevelMap f;
  LabelMap<BSeq> x;

  std::size_t ht() const { return f.height(); }
  friend bool operator==(const Q1Part&, const Q1Part&) = default;
};

struct StpQPair {
  Q0Condition p;
  Q1Part q;

  friend bool operator==(const StpQPair&, const StpQPair&) = default;
};

/// Checks f, the branches (length ht q, pairwise distinct), dom q within dom p,
/// ht q <= ht p, and that the values of p on dom q are disjoint above ht q.
ValidationResult validate_stp_q(const StpQPair& a);

/// Valid and dom p = dom q, ht p = ht q.
bool is_dq(const StpQPair& a);

/// An element of the dense set D_Q.
class DQElement {
 public:
  /// Throws PreconditionError unless is_dq(pair).
  explicit DQElement(StpQPair pair);

  const StpQPair& pair() const { return pair_; }
  const Q0Condition& p() const { return pair_.p; }
  const Q1Part& q() const { return pair_.q; }
  std::size_t ht() const { return pair_.p.ht; }

  friend bool operator==(const DQElement&, const DQElement&) = default;

 private:
  StpQPair pair_;
};

/// a <= b in the standard part. The first test is f^a contained in f^b.
bool leq_stp_q(const StpQPair& a, const StpQPair& b);
inline bool leq_stp_q(const DQElement& a, const DQElement& b) { return leq_stp_q(a.pair(), b.pair()); }

/// (a.p, q') in D_Q above a. Branches extend by smallest unused nodes; the new levels of
/// f take the values forced by p on dom q, then p's other values where they fit, then
/// the smallest free values.
DQElement densify_q(const StpQPair& a);

std::vector<DQElement> enumerate_dq(const LabelSet& labels, std::uint32_t max_ht,
                                    std::uint64_t budget = kDefaultBudget);
std::uint64_t count_dq(const LabelSet& labels, std::uint32_t max_ht);

/// Every valid standard-part pair with dom p inside labels and ht p <= max_ht.
std::vector<StpQPair> enumerate_stp_q(const LabelSet& labels, std::uint32_t max_ht,
                                      std::uint64_t budget = kDefaultBudget);

}  // namespace forcelab
