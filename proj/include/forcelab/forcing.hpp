#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "forcelab/q0.hpp"

namespace forcelab {

/// The atomic sentence "t_alpha(i) = j" of the forcing language over Q0.
class AtomicSentence {
 public:
  /// Throws PreconditionError unless j < 2^i.
  AtomicSentence(Label alpha, std::uint32_t i, std::uint64_t j);

  Label alpha() const { return alpha_; }
  std::uint32_t level() const { return i_; }
  std::uint64_t value() const { return j_; }

  friend auto operator<=>(const AtomicSentence&, const AtomicSentence&) = default;

 private:
  Label alpha_;
  std::uint32_t i_;
  std::uint64_t j_;
};

/// not(t_beta(i) = j and t_gamma(i) = j)
struct NegatedConjunction {
  Label beta;
  Label gamma;
  std::uint32_t i;
  std::uint64_t j;

  friend auto operator<=>(const NegatedConjunction&, const NegatedConjunction&) = default;
};

/// The sentences describing p, with the negated part cut off at a check height.
struct SigmaSet {
  std::vector<AtomicSentence> positives;
  std::vector<NegatedConjunction> negated_conjunctions;
};

SigmaSet sigma_set(const Q0Condition& p, std::uint32_t check_ht);

bool forces_atom(const Q0Condition& q, const AtomicSentence& s);

/// The canonical member of N_{alpha i j} below q: q restricted to {alpha} and cut to
/// height max(i+1, 2). Exists iff q forces s.
std::optional<Q0Condition> n_witness(const Q0Condition& q, const AtomicSentence& s);

/// Whether no extension of q forces both t_beta(i) = j and t_gamma(i) = j.
bool forces_neg_conj(const Q0Condition& q, Label beta, Label gamma, std::uint32_t i,
                     std::uint64_t j);

/// q forces every sentence of sigma_set(p, check_ht). Requires check_ht >= ht q.
bool forces_sigma_set(const Q0Condition& q, const Q0Condition& p, std::uint32_t check_ht);

/// Compatible q >= p and q' >= p' of a common height >= k with alpha in dom q and
/// beta in dom q'.
std::pair<Q0Condition, Q0Condition> joint_extension(const Q0Condition& p, const Q0Condition& p_prime,
                                                    std::uint32_t k, Label alpha, Label beta);

/// {ht 2; alpha -> <0,0>, beta -> <0,0>}
Q0Condition refuter_condition(Label alpha, Label beta);

/// A common extension of p and p' that does not extend q, where dom q = {alpha, beta},
/// alpha is outside dom p' and beta outside dom p.
Q0Condition refuting_common_extension(const Q0Condition& p, const Q0Condition& p_prime,
                                      const Q0Condition& q, Label alpha, Label beta);

}  // namespace forcelab
