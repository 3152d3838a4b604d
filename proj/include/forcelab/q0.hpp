#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "forcelab/trees.hpp"

namespace forcelab {

/// A condition of Q0: a height and a finite map from labels to nodes of T of that height.
///
/// Validity (see validate_q0) is not enforced on construction, so candidates can be
/// inspected. Conditions do not require their own values to be disjoint; disjointness
/// only enters through the order.
struct Q0Condition {
  std::uint32_t ht = 0;
  LabelMap<TSeq> entries;

  bool is_trivial() const { return entries.empty() && ht == 0; }
  bool contains(Label a) const { return entries.contains(a); }
  LabelSet domain() const;

  friend bool operator==(const Q0Condition&, const Q0Condition&) = default;
};

bool operator<(const Q0Condition& a, const Q0Condition& b);

struct ValidationResult {
  bool ok = true;
  std::vector<std::string> violations;

  explicit operator bool() const { return ok; }
  void fail(std::string why) {
    ok = false;
    violations.push_back(std::move(why));
  }
};

/// Finite-support permutation of labels; identity outside its support.
class LabelPermutation {
 public:
  LabelPermutation() = default;
  /// Throws PreconditionError unless `forward` permutes its own key set.
  explicit LabelPermutation(LabelMap<Label> forward);

  static LabelPermutation transposition(Label a, Label b);

  Label operator()(Label a) const;
  LabelPermutation inverse() const;
  bool is_identity() const;
  const LabelMap<Label>& support_map() const { return forward_; }

  friend bool operator==(const LabelPermutation&, const LabelPermutation&) = default;

 private:
  LabelMap<Label> forward_;
};

ValidationResult validate_q0(const Q0Condition& p);

/// p <= q: q extends p. Both must be valid.
bool leq_q0(const Q0Condition& p, const Q0Condition& q);

/// Compatibility via the inclusion/disjointness criterion.
bool compatible(const Q0Condition& p, const Q0Condition& q);

/// Height up to which a common extension of p and q always survives truncation:
/// max(ht p, ht q, ceil log2 |dom p u dom q|, 2 if the union is nonempty).
std::uint32_t completeness_height(const Q0Condition& p, const Q0Condition& q);

/// Brute-force compatibility: searches every r with dom r = dom p u dom q and height
/// at most completeness_height(p, q) for one that lies above both.
bool oracle_compatible(const Q0Condition& p, const Q0Condition& q,
                       std::uint64_t budget = kDefaultBudget);

/// Canonical common extension (greedy, smallest values, labels ascending).
/// Throws IncompatibleError when none exists.
Q0Condition common_extension(const Q0Condition& p, const Q0Condition& q);

struct HeightExtension {
  Q0Condition condition;
  // The trivial condition cannot be raised: nonempty height needs a nonempty domain.
  bool height_pinned = false;
};

HeightExtension extend_to_height(const Q0Condition& p, std::uint32_t k);
Q0Condition extend_domain(const Q0Condition& p, Label alpha);

Q0Condition apply_permutation(const LabelPermutation& h, const Q0Condition& p);

/// r >= q incompatible with p, for p not below q.
Q0Condition separativity_witness(const Q0Condition& p, const Q0Condition& q);

struct HomogeneityWitness {
  Q0Condition p_ext;
  Q0Condition q_ext;
  // r >= p_ext  <=>  apply_permutation(h.inverse(), r) >= q_ext
  LabelPermutation h;
};

HomogeneityWitness homogeneity_witnesses(const Q0Condition& p, const Q0Condition& q);

/// Moves the labels of p' outside X onto the smallest spare labels of X.
/// Every extension of the result inside Q0_X is compatible with p'.
Q0Condition reduction(const Q0Condition& p_prime, const LabelSet& x);

/// All valid conditions with domain inside `labels` and height <= max_ht: the trivial
/// condition first, then by height, domain (as a bitmask over sorted labels) and values.
std::vector<Q0Condition> enumerate_q0(const LabelSet& labels, std::uint32_t max_ht,
                                      std::uint64_t budget = kDefaultBudget);
std::uint64_t count_q0(const LabelSet& labels, std::uint32_t max_ht);

Q0Condition restrict_to(const Q0Condition& p, const LabelSet& labels);
/// Cuts every value to length h <= ht p.
Q0Condition truncate(const Q0Condition& p, std::uint32_t h);

}  // namespace forcelab
