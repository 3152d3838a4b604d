// Acceptance runner: one line per criterion, "PASS" or "FAIL", with the time taken
// against its limit. Exit status 0 iff every selected criterion passes.
//
//   forcelab_acceptance            all criteria
//   forcelab_acceptance 4 9        only criteria 4 and 9

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "forcelab/errors.hpp"
#include "forcelab/suites.hpp"

namespace {

using namespace forcelab;

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<SuiteReport()> run;
};

SuiteParams params(Suite s, std::vector<Label> labels, std::uint32_t max_ht) {
  SuiteConfig cfg;
  cfg.labels = std::move(labels);
  cfg.max_ht = max_ht;
  return resolve(cfg, s);
}

std::vector<Criterion> criteria() {
  return {
      {1, "compatibility criterion = brute-force oracle ({1,2}, ht <= 4)", 60,
       [] { return run_compat_oracle(params(Suite::CompatOracle, {1, 2}, 4)); }},
      {2, "partial-order laws for Q0, stp(Q0*Q1), stp(P0*P1) ({1,2}, ht <= 3)", 60,
       [] { return run_order_laws(params(Suite::OrderLaws, {1, 2}, 3)); }},
      {3, "separativity witnesses ({1,2}, ht <= 3)", 30,
       [] { return run_separativity(params(Suite::Separativity, {1, 2}, 3)); }},
      {4, "complete containment via reduction (Y = {1,2,9}, ht <= 3, q ht <= 4)", 120,
       [] { return run_reduction(params(Suite::Reduction, {1, 2}, 3)); }},
      {5, "atoms forced iff an N-witness exists ({1,2}, ht <= 4)", 60,
       [] { return run_claims_atoms(params(Suite::Claims, {1, 2}, 4)); }},
      {6, "q >= p iff q forces Sigma_p ({1,2,3}, ht <= 4, 1e5 samples)", 300,
       [] {
         auto p = params(Suite::Claims, {1, 2, 3}, 4);
         p.samples = 100000;
         return run_claims_sigma(p);
       }},
      {7, "refuting common extensions ({1,2,3} vs {2,3,9}, ht <= 3)", 120,
       [] { return run_refute(params(Suite::Refute, {1, 2, 3}, 3)); }},
      {8, "densification into D_Q and D_P (ht <= 3 plus 1e4 samples)", 120,
       [] {
         auto p = params(Suite::Densify, {1, 2}, 3);
         p.samples = 10000;
         return run_densify(p);
       }},
      {9, "DP* and D_Q order-isomorphic (ht <= 3 plus 1e4 pairs at ht <= 6)", 120,
       [] {
         auto p = params(Suite::Iso, {1, 2}, 3);
         p.samples = 10000;
         return run_iso(p);
       }},
      {10, "generic coherence and almost disjointness (100 seeds, 8 labels, N = 10)", 60,
       [] {
         auto p = params(Suite::Generic, {1, 2, 3, 4, 5, 6, 7, 8}, 10);
         p.seeds = 100;
         return run_generic(p);
       }},
      {11, "two incompatible extensions of every P0 and D_P element (ht <= 3)", 30,
       [] { return run_atomless(params(Suite::Atomless, {1, 2}, 3)); }},
  };
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int k = 1; k < argc; ++k) only.insert(std::atoi(argv[k]));

  int failed = 0;
  for (const auto& c : criteria()) {
    if (!only.empty() && !only.contains(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
      const auto rep = c.run();
      ok = rep.pass();
      detail = std::to_string(rep.cases) + " cases, " + std::to_string(rep.failures.size()) + " failures";
      if (!rep.failures.empty()) detail += "; first: " + rep.failures.front().detail;
    } catch (const std::exception& e) {
      detail = std::string("error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs <= c.limit_s;
    if (!in_time) detail += "; over time limit";
    const bool pass = ok && in_time;
    failed += !pass;
    std::printf("criterion %2d: %s  %-72s %7.2fs / %3.0fs  %s\n", c.id, pass ? "PASS" : "FAIL", c.name.c_str(), secs,
                c.limit_s, detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
