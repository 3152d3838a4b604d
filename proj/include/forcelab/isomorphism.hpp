#pragma once

// D_Q and the restriction DP* of D_P are the same partial order up to the order of
// coordinates. This header holds the two maps, the restriction, and the checker.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forcelab/iteration_p.hpp"
#include "forcelab/iteration_q.hpp"

namespace forcelab {

/// A D_P element that is either trivial (no labels, ht 0) or has labels and ht >= 2.
class DPStarElement {
 public:
  /// Throws PreconditionError when the element is outside DP*.
  explicit DPStarElement(DPElement e);

  const DPElement& element() const { return e_; }
  const StpPPair& pair() const { return e_.pair(); }
  std::size_t ht() const { return e_.ht(); }

  friend bool operator==(const DPStarElement&, const DPStarElement&) = default;

 private:
  DPElement e_;
};

bool is_dp_star(const StpPPair& a);

/// A DP* element above a. Empty domains of positive height get label 0 on the leftmost
/// branch with t following f; heights below 2 are raised to 2.
DPStarElement restrict_dp(const DPElement& a);

DQElement dp_to_dq(const DPStarElement& a);
DPStarElement dq_to_dp(const DQElement& d);

/// Per-level permutations pi_i of a_i acting on values: f becomes pi o f and t(i)
/// becomes pi_i(t(i)). Levels beyond the stored ones are left alone. Both standard-part
/// orders are invariant, which is what lets the exhaustive checks look only at elements
/// whose f is the identity.
class ValuePermutation {
 public:
  ValuePermutation() = default;
  explicit ValuePermutation(std::vector<std::vector<std::uint64_t>> levels);

  /// The permutation taking f to the identity on f's levels.
  static ValuePermutation normalizing(const LevelMap& f);

  std::size_t height() const { return levels_.size(); }
  std::uint64_t operator()(std::size_t level, std::uint64_t v) const {
    return level < levels_.size() ? levels_[level][v] : v;
  }

  LevelMap apply(const LevelMap& f) const;
  TSeq apply(const TSeq& t) const;
  Q0Condition apply(const Q0Condition& p) const;
  StpQPair apply(const StpQPair& a) const;
  StpPPair apply(const StpPPair& a) const;

 private:
  std::vector<std::vector<std::uint64_t>> levels_;
};

/// f is the identity on every level.
bool is_canonical(const LevelMap& f);

struct IsoFailure {
  std::string kind;  // "round-trip-p", "round-trip-q", "order"
  StpPPair a;
  std::optional<StpPPair> b;
  bool leq_p = false;
  bool leq_q = false;
};

struct IsoReport {
  std::uint64_t checked_pairs = 0;
  std::uint64_t elements = 0;
  std::vector<IsoFailure> failures;

  bool pass() const { return failures.empty(); }
};

/// Exhaustive two-way order check between DP* and D_Q over labels and heights up to
/// max_ht, plus both round trips. Pairs whose f are not nested are false on both sides
/// by the first clause of each order; the remaining ones are checked for every a with
/// canonical f, which covers all pairs up to a value permutation.
IsoReport check_order_iso(const LabelSet& labels, std::uint32_t max_ht,
                          std::uint64_t budget = kDefaultBudget);

/// Same check over every pair, no reduction. For small fragments and for validating the
/// reduced version.
IsoReport check_order_iso_full(const LabelSet& labels, std::uint32_t max_ht,
                               std::uint64_t budget = kDefaultBudget);

/// One pair through both orders and both round trips; appends failures to report.
void check_iso_pair(const DPStarElement& a, const DPStarElement& b, IsoReport& report);

std::vector<DPStarElement> enumerate_dp_star(const LabelSet& labels, std::uint32_t max_ht,
                                             std::uint64_t budget = kDefaultBudget);

}  // namespace forcelab
