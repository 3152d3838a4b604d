#include <doctest.h>

#include "forcelab/errors.hpp"
#include "forcelab/generic_sim.hpp"
#include "oracles.hpp"

using namespace forcelab;

namespace {

// Direct reading of the two claims on the extracted objects.
std::uint64_t coherence_failures(const GenericObjects& g) {
  std::uint64_t bad = 0;
  for (const auto& [a, t] : g.t) {
    const auto& x = g.x.at(a);
    for (std::size_t i = g.entry_height.at(a); i < g.height(); ++i) bad += t[i] != g.f(x.prefix(i));
  }
  return bad;
}

std::uint64_t disjointness_failures(const GenericObjects& g) {
  std::uint64_t bad = 0;
  for (const auto& [a, ta] : g.t) {
    for (const auto& [b, tb] : g.t) {
      if (a >= b) continue;
      const auto from = std::max(g.entry_height.at(a), g.entry_height.at(b));
      for (std::size_t i = from; i < g.height(); ++i) {
        if (!(g.x.at(a).prefix(i) == g.x.at(b).prefix(i))) bad += ta[i] == tb[i];
      }
    }
  }
  return bad;
}

}  // namespace

TEST_CASE("build_filter examples") {
  const auto empty = build_filter({}, 0, 3);
  REQUIRE(empty.chain.size() == 1);
  CHECK(empty.top().pair() == StpQPair{});
  const auto g0 = extract_objects(empty);
  CHECK(g0.height() == 0);
  CHECK(g0.t.empty());
  CHECK(check_coherence(g0).pass());
  CHECK(check_almost_disjoint(g0).pass());

  const auto one = build_filter({1}, 3, 0);
  CHECK(validate_trace(one).ok);
  CHECK(one.top().p().domain() == LabelSet{1});
  CHECK(one.top().ht() >= 3);
  const auto g1 = extract_objects(one);
  CHECK(g1.t.at(1).size() == g1.height());
  CHECK(g1.x.at(1).size() == g1.height());

  const LabelSet eight{1, 2, 3, 4, 5, 6, 7, 8};
  const auto big = build_filter(eight, 10, 7);
  CHECK(validate_trace(big).ok);
  CHECK(big.top().ht() >= 10);
  CHECK(big.top().p().domain() == eight);

  CHECK_THROWS_AS(build_filter({1, 2, 3, 4, 5}, 2, 0), PreconditionError);
  CHECK_THROWS_AS(build_filter({}, 3, 0), PreconditionError);
}

TEST_CASE("traces are increasing chains in D_Q") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto tr = build_filter({1, 2, 3, 4}, 6, seed);
    CHECK(tr.chain.front().pair() == StpQPair{});
    for (std::size_t k = 0; k + 1 < tr.chain.size(); ++k) {
      CHECK(oracle::leq_stp_q(tr.chain[k].pair(), tr.chain[k + 1].pair()));
      CHECK_FALSE(tr.chain[k] == tr.chain[k + 1]);
    }
    for (const auto& [a, h] : tr.entry_height) {
      for (const auto& d : tr.chain) {
        if (d.p().contains(a)) {
          CHECK(d.ht() == h);
          break;
        }
      }
    }
  }
}

TEST_CASE("determinism") {
  const auto a = build_filter({1, 2, 3}, 5, 42);
  const auto b = build_filter({1, 2, 3}, 5, 42);
  CHECK(a.chain == b.chain);
  CHECK(a.entry_height == b.entry_height);
  bool differs = false;
  for (std::uint64_t s = 0; s < 8 && !differs; ++s) differs = !(build_filter({1, 2, 3}, 5, s).chain == a.chain);
  CHECK(differs);
}

TEST_CASE("extract_objects copies the top element") {
  const auto tr = build_filter({1, 2, 3}, 5, 9);
  const auto g = extract_objects(tr);
  CHECK(g.f == tr.top().q().f);
  CHECK(g.x == tr.top().q().x);
  CHECK(g.t == tr.top().p().entries);
  CHECK(g.entry_height == tr.entry_height);
}

TEST_CASE("coherence and almost disjointness over seeds") {
  const LabelSet eight{1, 2, 3, 4, 5, 6, 7, 8};
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto g = extract_objects(build_filter(eight, 10, seed));
    const auto c = check_coherence(g);
    const auto d = check_almost_disjoint(g);
    CHECK(c.pass());
    CHECK(d.pass());
    CHECK(c.checks > 0);
    CHECK(coherence_failures(g) == 0);
    CHECK(disjointness_failures(g) == 0);
    CHECK(d.divergence_levels.size() == 8 * 7 / 2);
    for (const auto& dl : d.divergence_levels) {
      const auto& xa = g.x.at(dl.alpha);
      const auto& xb = g.x.at(dl.beta);
      CHECK(xa.prefix(dl.level) == xb.prefix(dl.level));
      CHECK(xa[dl.level] != xb[dl.level]);
    }
  }
}

TEST_CASE("negative controls") {
  const LabelSet eight{1, 2, 3, 4, 5, 6, 7, 8};
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto g = extract_objects(build_filter(eight, 10, seed));
    const auto bad_t = corrupt_coherence(g);
    CHECK(check_coherence(bad_t).violations.size() == 1);
    CHECK(coherence_failures(bad_t) == 1);
    const auto bad_f = forge_collision(g);
    CHECK(check_almost_disjoint(bad_f).violations.size() == 1);
    CHECK(disjointness_failures(bad_f) == 1);
    CHECK(check_coherence(bad_f).pass());
  }
  CHECK_THROWS_AS(corrupt_coherence(GenericObjects{}), PreconditionError);
  CHECK_THROWS_AS(forge_collision(extract_objects(build_filter({1}, 3, 0))), PreconditionError);
}
