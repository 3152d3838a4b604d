#pragma once

// Standard part of P0 * P1. P0 is the forcing of level maps f ordered by inclusion;
// P1 is a finite-support product with one coordinate (x_alpha, t_alpha) per label.

#include <cstdint>
#include <utility>
#include <vector>

#include "forcelab/level_map.hpp"
#include "forcelab/q0.hpp"

namespace forcelab {

using P0Condition = LevelMap;

/// One P1 coordinate. Its height n_alpha is the common length of x and t.
struct P1Entry {
  BSeq x;
  TSeq t;

  std::size_t ht() const { return x.size(); }
  friend bool operator==(const P1Entry&, const P1Entry&) = default;
};

/// (f, entries) with every n_alpha <= ht f. There is no coherence between entries and f
/// and no constraint across labels; both live in the order only.
struct StpPPair {
  LevelMap f;
  LabelMap<P1Entry> entries;

  friend bool operator==(const StpPPair&, const StpPPair&) = default;
};

bool leq_p0(const P0Condition& f, const P0Condition& g);

ValidationResult validate_stp_p(const StpPPair& a);

/// Valid, every n_alpha = ht f, and the branches pairwise distinct.
bool is_dp(const StpPPair& a);

class DPElement {
 public:
  /// Throws PreconditionError unless is_dp(pair).
  explicit DPElement(StpPPair pair);

  const StpPPair& pair() const { return pair_; }
  const LevelMap& f() const { return pair_.f; }
  const LabelMap<P1Entry>& entries() const { return pair_.entries; }
  std::size_t ht() const { return pair_.f.height(); }

  friend bool operator==(const DPElement&, const DPElement&) = default;

 private:
  StpPPair pair_;
};

/// a <= b in the standard part. The first test is f^a contained in f^b.
bool leq_stp_p(const StpPPair& a, const StpPPair& b);
inline bool leq_stp_p(const DPElement& a, const DPElement& b) { return leq_stp_p(a.pair(), b.pair()); }

/// An element of D_P above a. Inputs already in D_P come back unchanged; otherwise the
/// common height is N = max(ht f, m + ceil log2 |w|) with m the largest entry height.
DPElement densify_p(const StpPPair& a);

/// Raises a D_P element to height h: new levels of f are the identity, branches grow by
/// zero bits and the t's follow f along the branches.
DPElement extend_dp_to_height(const DPElement& a, std::size_t h);

/// Two proper extensions with no common extension. They split f at level max(ht f, 1);
/// entries at full height are carried along so D_P inputs give D_P outputs.
std::pair<P0Condition, P0Condition> two_incompatible_extensions(const P0Condition& f);
std::pair<StpPPair, StpPPair> two_incompatible_extensions(const StpPPair& a);

/// Bounded common-upper-bound search: every candidate of height up to max_height whose
/// components extend those of b, tested against both with leq.
bool oracle_p0_compatible(const P0Condition& b, const P0Condition& c, std::size_t max_height,
                          std::uint64_t budget = kDefaultBudget);
bool oracle_stp_p_compatible(const StpPPair& b, const StpPPair& c, std::size_t max_height,
                             std::uint64_t budget = kDefaultBudget);

std::vector<DPElement> enumerate_dp(const LabelSet& labels, std::uint32_t max_ht,
                                    std::uint64_t budget = kDefaultBudget);
std::uint64_t count_dp(const LabelSet& labels, std::uint32_t max_ht);

/// Every valid standard-part pair over labels with ht f <= max_ht.
std::vector<StpPPair> enumerate_stp_p(const LabelSet& labels, std::uint32_t max_ht,
                                      std::uint64_t budget = kDefaultBudget);

}  // namespace forcelab
