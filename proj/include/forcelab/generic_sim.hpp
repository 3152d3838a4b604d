#pragma once

// Finite stages of a generic filter through D_Q and the objects f, x_alpha, t_alpha it
// approximates.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forcelab/iteration_q.hpp"

namespace forcelab {

struct FilterTrace {
  std::vector<DQElement> chain;           // strictly increasing, starts at the trivial element
  LabelMap<std::uint32_t> entry_height;  // height of the first element holding the label

  const DQElement& top() const { return chain.back(); }
};

/// A chain from the trivial element that brings every label in and reaches height n.
/// Steps either add a label at the current height (random free node, random t) or raise
/// the height by one (random bijection for the new level, random child for every branch,
/// t forced along f); their order is drawn from the seed. Throws PreconditionError when
/// |labels| > 2^n or when labels is empty and n > 0 (no element of D_Q with empty domain
/// has positive height).
FilterTrace build_filter(const LabelSet& labels, std::uint32_t n, std::uint64_t seed);

/// Chain strictly increasing under leq_stp_q, first element trivial, entry heights match.
ValidationResult validate_trace(const FilterTrace& tr);

struct GenericObjects {
  LevelMap f;
  LabelMap<BSeq> x;
  LabelMap<TSeq> t;
  LabelMap<std::uint32_t> entry_height;

  std::size_t height() const { return f.height(); }
  friend bool operator==(const GenericObjects&, const GenericObjects&) = default;
};

GenericObjects extract_objects(const FilterTrace& tr);

struct GenericViolation {
  std::string kind;  // "coherence" or "almost-disjoint"
  Label alpha = 0;
  std::optional<Label> beta;
  std::uint32_t level = 0;
};

struct DivergenceLevel {
  Label alpha = 0;
  Label beta = 0;
  std::uint32_t level = 0;  // length of the common prefix of x_alpha and x_beta
};

struct GenericReport {
  std::uint64_t checks = 0;
  std::vector<GenericViolation> violations;
  std::vector<DivergenceLevel> divergence_levels;

  bool pass() const { return violations.empty(); }
};

/// t_alpha(i) = f(x_alpha restricted to i) for every i from the entry height of alpha up.
GenericReport check_coherence(const GenericObjects& g);

/// t_alpha(i) != t_beta(i) wherever the branches have split and both labels are present.
GenericReport check_almost_disjoint(const GenericObjects& g);

/// Negative controls. The first shifts one t value past the entry height; the second
/// overwrites f at one node with the value of another node on the same level (and moves
/// the matching t along), picking nodes that carry a single branch each. Each leaves
/// exactly one violation for the corresponding check. Throw PreconditionError when the
/// objects have no room for the corruption.
GenericObjects corrupt_coherence(const GenericObjects& g);
GenericObjects forge_collision(const GenericObjects& g);

}  // namespace forcelab
