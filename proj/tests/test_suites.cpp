#include <doctest.h>

#include "forcelab/errors.hpp"
#include "forcelab/suites.hpp"

using namespace forcelab;

namespace {

SuiteConfig small(Suite s) {
  SuiteConfig cfg;
  cfg.suite = s;
  switch (s) {
    case Suite::Generic:
      cfg.labels = std::vector<Label>{1, 2, 3};
      cfg.max_ht = 5;
      cfg.seeds = 5;
      break;
    case Suite::Claims:
    case Suite::Refute:
      cfg.labels = std::vector<Label>{1, 2, 3};
      cfg.max_ht = 2;
      cfg.samples = 200;
      break;
    default:
      cfg.labels = std::vector<Label>{1, 2};
      cfg.max_ht = 2;
      cfg.samples = 200;
  }
  return cfg;
}

}  // namespace

TEST_CASE("suite names") {
  for (auto s : individual_suites()) CHECK(parse_suite(suite_name(s)) == s);
  CHECK(parse_suite("all") == Suite::All);
  CHECK_FALSE(parse_suite("nope"));
  CHECK(individual_suites().size() == 10);
}

TEST_CASE("defaults") {
  SuiteConfig cfg;
  const auto p = resolve(cfg, Suite::CompatOracle);
  CHECK(p.labels == LabelSet{1, 2});
  CHECK(p.max_ht == 4);
  const auto g = resolve(cfg, Suite::Generic);
  CHECK(g.labels.size() == 8);
  CHECK(g.max_ht == 10);
  CHECK(g.seeds == 100);
  cfg.max_ht = 2;
  CHECK(resolve(cfg, Suite::Iso).max_ht == 2);
}

TEST_CASE("every suite passes on a small config") {
  for (auto s : individual_suites()) {
    CAPTURE(suite_name(s));
    const auto rep = run_suite(small(s));
    CHECK(rep.pass());
    CHECK(rep.cases > 0);
    CHECK(rep.suite == suite_name(s));
    const auto j = encode(rep);
    CHECK(j["pass"].get<bool>() == rep.failures.empty());
    CHECK(j["failures"].is_array());
    CHECK(j.contains("wall_ms"));
    std::vector<std::string> keys;
    for (const auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"suite", "cases", "failures", "pass", "wall_ms"});
  }
}

TEST_CASE("reports are reproducible apart from wall time") {
  auto a = run_suite(small(Suite::Densify));
  auto b = run_suite(small(Suite::Densify));
  a.wall_ms = b.wall_ms = 0;
  CHECK(dump(encode(a)) == dump(encode(b)));
}

TEST_CASE("failure bookkeeping") {
  SuiteReport r;
  r.suite = "x";
  CHECK(r.pass());
  r.fail(Json{{"k", 2}}, "b");
  r.fail(Json{{"k", 1}}, "a");
  r.finish();
  CHECK_FALSE(r.pass());
  CHECK(r.failures.front().detail == "a");
  CHECK_FALSE(encode(r)["pass"].get<bool>());
}

TEST_CASE("config errors") {
  auto cfg = small(Suite::CompatOracle);
  cfg.max_ht = 3;
  cfg.budget = 10;
  CHECK_THROWS_AS(run_suite(cfg), BudgetExceeded);
  auto all = small(Suite::All);
  all.budget = 10;
  CHECK_THROWS_AS(run_suite(all), Error);
  auto gen = small(Suite::Generic);
  gen.labels = std::vector<Label>{1, 2, 3, 4, 5};
  gen.max_ht = 2;
  CHECK_THROWS_AS(run_suite(gen), PreconditionError);
}

TEST_CASE("refutation report") {
  Q0Condition p;
  p.ht = 2;
  p.entries.emplace(1, TSeq{0, 0});
  Q0Condition pp;
  pp.ht = 2;
  pp.entries.emplace(9, TSeq{0, 0});
  const auto j = refutation_report(p, pp, 1, 9);
  CHECK(j.contains("inputs"));
  CHECK(j.contains("r"));
  CHECK(j["checks"]["geq_p"].get<bool>());
  CHECK(j["checks"]["geq_p_prime"].get<bool>());
  CHECK(j["checks"]["not_geq_q"].get<bool>());
}
