// forcelab: command-line front end.
//
//   forcelab check <suite>        run a property suite and report as JSON
//   forcelab enumerate <kind>     list or count a finite fragment
//   forcelab simulate             build a generic-filter trace and check it
//   forcelab iso                  check D_Q against DP* on a fragment
//   forcelab refute               run the refutation construction on one input
//
// Exit status: 0 pass, 1 failures, 2 bad configuration or budget.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "forcelab/codec.hpp"
#include "forcelab/errors.hpp"
#include "forcelab/suites.hpp"

namespace {

using namespace forcelab;

struct Common {
  std::vector<Label> labels;
  std::optional<std::uint32_t> max_ht;
  std::optional<std::uint64_t> seeds;
  std::uint64_t seed = 0;
  std::uint64_t budget = kDefaultBudget;
  std::optional<std::uint64_t> samples;
  Label extra_label = 9;
  std::string out;
  bool json = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--labels", c.labels, "Labels, comma separated")->delimiter(',');
  cmd->add_option("--max-ht", c.max_ht, "Largest height enumerated");
  cmd->add_option("--seeds", c.seeds, "Number of seeds (generic suite)");
  cmd->add_option("--seed", c.seed, "First seed of the random stream");
  cmd->add_option("--budget", c.budget, "Largest fragment or search size allowed (FORCELAB_BUDGET overrides)");
  cmd->add_option("--out", c.out, "Write the JSON result to this file");
  cmd->add_flag("--json", c.json, "Print the JSON result on standard output");
}

// Writes j to --out if given; prints it when there is no --out or --json is set,
// otherwise prints the short summary.
void emit(const Common& c, const Json& j, const std::string& summary) {
  if (!c.out.empty()) {
    std::ofstream f(c.out);
    if (!f) throw PreconditionError("cannot open " + c.out + " for writing");
    f << dump(j) << '\n';
  }
  if (c.out.empty() || c.json) {
    std::cout << dump(j) << '\n';
  } else {
    std::cout << summary << '\n';
  }
}

LabelSet label_set(const Common& c, std::initializer_list<Label> fallback) {
  if (c.labels.empty()) return LabelSet(fallback);
  return LabelSet(c.labels.begin(), c.labels.end());
}

int run_check(const Common& c, const std::string& name) {
  const auto suite = parse_suite(name);
  if (!suite) throw PreconditionError("unknown suite \"" + name + "\"");
  SuiteConfig cfg;
  cfg.suite = *suite;
  if (!c.labels.empty()) cfg.labels = c.labels;
  cfg.max_ht = c.max_ht;
  cfg.seeds = c.seeds;
  cfg.seed = c.seed;
  cfg.budget = c.budget;
  cfg.samples = c.samples;
  cfg.extra_label = c.extra_label;
  const auto rep = run_suite(cfg);
  emit(c, encode(rep),
       rep.suite + ": " + (rep.pass() ? "pass" : "FAIL") + ", " + std::to_string(rep.cases) + " cases, " +
           std::to_string(rep.failures.size()) + " failures");
  return rep.pass() ? 0 : 1;
}

template <class T>
Json encode_all(const std::vector<T>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(encode(x));
  return out;
}

int run_enumerate(const Common& c, const std::string& kind) {
  const auto labels = label_set(c, {1, 2});
  const auto h = c.max_ht.value_or(2);
  Json elements;
  if (kind == "q0") elements = encode_all(enumerate_q0(labels, h, c.budget));
  else if (kind == "stp-q") elements = encode_all(enumerate_stp_q(labels, h, c.budget));
  else if (kind == "dq") elements = encode_all(enumerate_dq(labels, h, c.budget));
  else if (kind == "stp-p") elements = encode_all(enumerate_stp_p(labels, h, c.budget));
  else if (kind == "dp") elements = encode_all(enumerate_dp(labels, h, c.budget));
  else if (kind == "dp-star") elements = encode_all(enumerate_dp_star(labels, h, c.budget));
  else if (kind == "level-maps") elements = encode_all(enumerate_level_maps(h, c.budget));
  else if (kind == "t-level") elements = encode_all(enumerate_t_level(h, c.budget));
  else if (kind == "b-level") elements = encode_all(enumerate_b_level(h, c.budget));
  else throw PreconditionError("unknown structure \"" + kind + "\"");
  Json out;
  out["structure"] = kind;
  out["count"] = elements.size();
  out["elements"] = std::move(elements);
  emit(c, out, kind + ": " + std::to_string(out["count"].get<std::size_t>()) + " elements");
  return 0;
}

int run_simulate(const Common& c) {
  const auto labels = label_set(c, {1, 2, 3, 4, 5, 6, 7, 8});
  const auto n = c.max_ht.value_or(10);
  const auto tr = build_filter(labels, n, c.seed);
  const auto g = extract_objects(tr);
  const auto coh = check_coherence(g);
  const auto ad = check_almost_disjoint(g);
  Json out;
  out["trace"] = encode(tr);
  out["objects"] = encode(g);
  out["coherence"] = encode(coh);
  out["almost_disjoint"] = encode(ad);
  const bool ok = coh.pass() && ad.pass() && validate_trace(tr).ok;
  emit(c, out,
       "simulate: " + std::string(ok ? "pass" : "FAIL") + ", chain of " + std::to_string(tr.chain.size()) +
           ", height " + std::to_string(g.height()) + ", " + std::to_string(coh.checks + ad.checks) + " checks");
  return ok ? 0 : 1;
}

int run_iso(const Common& c) {
  const auto rep = check_order_iso(label_set(c, {1, 2}), c.max_ht.value_or(3), c.budget);
  emit(c, encode(rep),
       "iso: " + std::string(rep.pass() ? "pass" : "FAIL") + ", " + std::to_string(rep.checked_pairs) + " pairs over " +
           std::to_string(rep.elements) + " elements");
  return rep.pass() ? 0 : 1;
}

int run_refute(const Common& c, const std::string& p_text, const std::string& pp_text, Label alpha, Label beta) {
  const auto p = decode_text<Q0Condition>(p_text);
  const auto pp = decode_text<Q0Condition>(pp_text);
  for (const auto* cond : {&p, &pp}) {
    if (auto v = validate_q0(*cond); !v) throw PreconditionError("invalid condition: " + v.violations.front());
  }
  const auto rep = refutation_report(p, pp, alpha, beta);
  bool ok = true;
  for (const auto& [name, v] : rep["checks"].items()) ok = ok && v.get<bool>();
  emit(c, rep, std::string("refute: ") + (ok ? "pass" : "FAIL"));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite forcing posets: conditions, orders, dense sets and property suites"};
  app.require_subcommand(1);

  Common c;
  std::string suite, kind, p_text, pp_text;
  Label alpha = 1, beta = 9;

  auto* check = app.add_subcommand("check", "Run a property suite");
  check->add_option("suite", suite, "order-laws, compat-oracle, separativity, reduction, claims, refute, densify, iso, generic, atomless or all")
      ->required();
  add_common(check, c);
  check->add_option("--samples", c.samples, "Random cases for the sampled parts");
  check->add_option("--extra-label", c.extra_label, "Label outside the set, for reduction and refute");

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate a finite fragment");
  enumerate->add_option("structure", kind, "q0, stp-q, dq, stp-p, dp, dp-star, level-maps, t-level or b-level")->required();
  add_common(enumerate, c);

  auto* simulate = app.add_subcommand("simulate", "Build a generic-filter trace and check it");
  add_common(simulate, c);

  auto* iso = app.add_subcommand("iso", "Check the order isomorphism on a fragment");
  add_common(iso, c);

  auto* refute = app.add_subcommand("refute", "Refutation construction for one pair");
  add_common(refute, c);
  refute->add_option("--p", p_text, "Condition p as JSON")->required();
  refute->add_option("--p-prime", pp_text, "Condition p' as JSON")->required();
  refute->add_option("--alpha", alpha, "Label of p outside p'");
  refute->add_option("--beta", beta, "Label of p' outside p");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (const char* env = std::getenv("FORCELAB_BUDGET"); env && *env) {
      std::size_t used = 0;
      const std::string text(env);
      const auto v = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing characters");
      c.budget = v;
    }
  } catch (const std::exception&) {
    std::cerr << "error: FORCELAB_BUDGET must be a natural number\n";
    return 2;
  }

  try {
    if (*check) return run_check(c, suite);
    if (*enumerate) return run_enumerate(c, kind);
    if (*simulate) return run_simulate(c);
    if (*iso) return run_iso(c);
    if (*refute) return run_refute(c, p_text, pp_text, alpha, beta);
  } catch (const forcelab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
