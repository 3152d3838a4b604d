#pragma once

// Property suites over finite fragments, and the report they produce.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "forcelab/codec.hpp"

namespace forcelab {

enum class Suite {
  OrderLaws,
  CompatOracle,
  Separativity,
  Reduction,
  Claims,
  Refute,
  Densify,
  Iso,
  Generic,
  Atomless,
  All,
};

std::optional<Suite> parse_suite(std::string_view name);
std::string_view suite_name(Suite s);
/// Every suite except All, in run order.
const std::vector<Suite>& individual_suites();

struct SuiteConfig {
  Suite suite = Suite::All;
  std::optional<std::vector<Label>> labels;  // unset: the suite's default
  std::optional<std::uint32_t> max_ht;       // unset: the suite's default
  std::optional<std::uint64_t> seeds;        // generic: number of seeds
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
  std::optional<std::uint64_t> samples;      // random cases for the sampled parts
  Label extra_label = 9;                     // the label outside X for reduction and refute
};

/// A config with every default filled in for one suite.
struct SuiteParams {
  LabelSet labels;
  std::uint32_t max_ht = 0;
  std::uint64_t seeds = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
  std::uint64_t samples = 0;
  Label extra_label = 9;
};

SuiteParams resolve(const SuiteConfig& cfg, Suite s);

struct SuiteFailure {
  Json input;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t cases = 0;
  std::vector<SuiteFailure> failures;
  double wall_ms = 0;

  bool pass() const { return failures.empty(); }
  void fail(Json input, std::string detail);
  /// Sorts failures by serialized input, then detail.
  void finish();
};

/// {suite, cases, failures, pass, wall_ms}.
Json encode(const SuiteReport& r);

/// Runs the named suite. Throws BudgetExceeded when a fragment is over budget and
/// PreconditionError on a config the suite cannot use.
SuiteReport run_suite(const SuiteConfig& cfg);

SuiteReport run_order_laws(const SuiteParams& p);
SuiteReport run_compat_oracle(const SuiteParams& p);
SuiteReport run_separativity(const SuiteParams& p);
SuiteReport run_reduction(const SuiteParams& p);
/// forces_atom against n_witness, exhaustive over labels and heights.
SuiteReport run_claims_atoms(const SuiteParams& p);
/// leq_q0 against forces_sigma_set. Exhaustive when the pair count is small,
/// otherwise exhaustive at ht <= 3 plus p.samples sampled pairs at full height.
SuiteReport run_claims_sigma(const SuiteParams& p);
SuiteReport run_refute(const SuiteParams& p);
SuiteReport run_densify(const SuiteParams& p);
SuiteReport run_iso(const SuiteParams& p);
SuiteReport run_generic(const SuiteParams& p);
SuiteReport run_atomless(const SuiteParams& p);

/// The refutation report for one input: {inputs, r, checks: {geq_p, geq_p_prime, not_geq_q}}.
Json refutation_report(const Q0Condition& p, const Q0Condition& p_prime, Label alpha, Label beta);

}  // namespace forcelab
