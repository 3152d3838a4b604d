#include <doctest.h>

#include "forcelab/errors.hpp"
#include "forcelab/q0.hpp"
#include "oracles.hpp"

using namespace forcelab;

namespace {

Q0Condition cond(std::uint32_t ht, std::initializer_list<std::pair<const Label, TSeq>> entries) {
  Q0Condition p;
  p.ht = ht;
  for (const auto& [a, t] : entries) p.entries.emplace(a, t);
  return p;
}

}  // namespace

TEST_CASE("validate_q0") {
  CHECK(validate_q0(cond(2, {{1, {0, 0}}})).ok);
  const auto low = validate_q0(cond(1, {{1, {0}}}));
  CHECK_FALSE(low.ok);
  CHECK_FALSE(low.violations.empty());
  CHECK(validate_q0(Q0Condition{}).ok);
  CHECK_FALSE(validate_q0(cond(2, {{1, {0, 0, 0}}})).ok);          // wrong length
  CHECK_FALSE(validate_q0(cond(2, {{1, {0, 2}}})).ok);             // value outside a_1
  CHECK_FALSE(validate_q0(cond(3, {})).ok);                        // empty domain, positive height
  CHECK_FALSE(validate_q0(cond(2, {{1, {0, 0}}, {2, {0, 0}}, {3, {0, 0}}, {4, {0, 0}}, {5, {0, 0}}})).ok);
  CHECK(validate_q0(cond(2, {{1, {0, 0}}, {2, {0, 0}}, {3, {0, 0}}, {4, {0, 0}}})).ok);
}

TEST_CASE("leq_q0 examples") {
  const auto p = cond(2, {{1, {0, 0}}});
  const auto q = cond(3, {{1, {0, 0, 1}}, {2, {0, 1, 2}}});
  CHECK(leq_q0(p, q));
  CHECK(oracle::leq_q0(p, q));
  CHECK_FALSE(leq_q0(q, p));
  const auto a = cond(2, {{1, {0, 0}}, {2, {0, 0}}});
  const auto b = cond(3, {{1, {0, 0, 1}}, {2, {0, 0, 1}}});
  CHECK_FALSE(leq_q0(a, b));
  CHECK(leq_q0(Q0Condition{}, q));
}

TEST_CASE("leq_q0 agrees with the literal definition") {
  const auto all = enumerate_q0({1, 2}, 3);
  for (const auto& p : all) {
    CHECK(leq_q0(p, p));
    for (const auto& q : all) {
      if (leq_q0(p, q) != oracle::leq_q0(p, q)) FAIL_CHECK("mismatch");
    }
  }
}

TEST_CASE("compatible examples") {
  const auto p = cond(2, {{1, {0, 0}}});
  CHECK(compatible(p, cond(3, {{1, {0, 0, 1}}, {2, {0, 1, 2}}})));
  CHECK_FALSE(compatible(p, cond(3, {{1, {0, 1, 0}}})));
  const auto a = cond(2, {{1, {0, 0}}, {2, {0, 1}}});
  const auto b = cond(4, {{1, {0, 0, 2, 3}}, {2, {0, 1, 2, 0}}});
  CHECK_FALSE(compatible(a, b));
  CHECK_FALSE(compatible(b, a));
  for (const auto& [x, y] : {std::pair{p, cond(3, {{1, {0, 0, 1}}, {2, {0, 1, 2}}})},
                            std::pair{p, cond(3, {{1, {0, 1, 0}}})}, std::pair{a, b}}) {
    CHECK(oracle_compatible(x, y) == compatible(x, y));
  }
  CHECK(oracle_compatible(Q0Condition{}, b));
  CHECK(oracle_compatible(b, b));
}

TEST_CASE("completeness height") {
  CHECK(completeness_height(Q0Condition{}, Q0Condition{}) == 0);
  CHECK(completeness_height(cond(2, {{1, {0, 0}}}), Q0Condition{}) == 2);
  CHECK(completeness_height(cond(2, {{1, {0, 0}}, {2, {0, 0}}}), cond(2, {{3, {0, 0}}, {4, {0, 1}}, {5, {0, 1}}})) == 3);
  CHECK(completeness_height(cond(2, {{1, {0, 0}}}), cond(4, {{1, {0, 0, 0, 0}}})) == 4);
}

// Any common extension, restricted to the union of domains and cut to the completeness
// height, is still a common extension; so searching higher never finds more.
TEST_CASE("oracle search height is complete") {
  for (const LabelSet& labels : {LabelSet{1, 2}, LabelSet{1, 2, 3}}) {
    const auto conds = enumerate_q0(labels, 2);
    const auto above = enumerate_q0(labels, 3);
    for (const auto& p : conds) {
      for (const auto& q : conds) {
        LabelSet dom = p.domain();
        for (auto l : q.domain()) dom.insert(l);
        const auto h = completeness_height(p, q);
        bool found_high = false;
        for (const auto& r : above) {
          if (!oracle::leq_q0(p, r) || !oracle::leq_q0(q, r)) continue;
          found_high = true;
          const auto cut = truncate(restrict_to(r, dom), std::min(h, r.ht));
          CHECK(validate_q0(cut).ok);
          CHECK(oracle::leq_q0(p, cut));
          CHECK(oracle::leq_q0(q, cut));
        }
        CHECK(found_high == oracle_compatible(p, q));
        CHECK(found_high == compatible(p, q));
      }
    }
  }
}

TEST_CASE("compatible agrees with the search oracle on heights up to 3") {
  const auto all = enumerate_q0({1, 2}, 3);
  for (const auto& p : all) {
    for (const auto& q : all) {
      const auto h = std::max<std::uint32_t>(completeness_height(p, q), 1) + 1;
      if (compatible(p, q) != oracle::compatible_by_search(p, q, std::min<std::uint32_t>(h, 4))) {
        FAIL_CHECK("compatible mismatch");
      }
    }
  }
}

TEST_CASE("common_extension") {
  const auto p = cond(2, {{1, {0, 0}}});
  const auto q = cond(2, {{2, {0, 1}}});
  CHECK(common_extension(p, q) == cond(2, {{1, {0, 0}}, {2, {0, 1}}}));
  CHECK(common_extension(p, p) == p);
  const auto r = common_extension(p, cond(3, {{2, {0, 1, 2}}}));
  CHECK(r == cond(3, {{1, {0, 0, 0}}, {2, {0, 1, 2}}}));
  CHECK_THROWS_AS(common_extension(p, cond(3, {{1, {0, 1, 0}}})), IncompatibleError);

  const auto all = enumerate_q0({1, 2, 3}, 3, std::uint64_t{1} << 22);
  for (std::size_t a = 0; a < all.size(); a += 7) {
    for (std::size_t b = 0; b < all.size(); b += 5) {
      if (!compatible(all[a], all[b])) continue;
      const auto c = common_extension(all[a], all[b]);
      CHECK(validate_q0(c).ok);
      CHECK(oracle::leq_q0(all[a], c));
      CHECK(oracle::leq_q0(all[b], c));
      CHECK(c.ht == completeness_height(all[a], all[b]));
    }
  }
}

TEST_CASE("extend_to_height") {
  const auto pinned = extend_to_height(Q0Condition{}, 5);
  CHECK(pinned.height_pinned);
  CHECK(pinned.condition.is_trivial());

  const auto e = extend_to_height(cond(2, {{1, {0, 0}}}), 4);
  CHECK_FALSE(e.height_pinned);
  CHECK(e.condition == cond(4, {{1, {0, 0, 0, 0}}}));

  const auto two = extend_to_height(cond(3, {{1, {0, 0, 1}}, {2, {0, 1, 0}}}), 4).condition;
  CHECK(two == cond(4, {{1, {0, 0, 1, 0}}, {2, {0, 1, 0, 1}}}));

  for (const auto& p : enumerate_q0({1, 2, 3}, 3, std::uint64_t{1} << 22)) {
    if (p.is_trivial()) continue;
    for (std::uint32_t k : {0u, 3u, 5u}) {
      const auto q = extend_to_height(p, k).condition;
      CHECK(q.ht == std::max(p.ht, k));
      CHECK(oracle::leq_q0(p, q));
    }
  }
}

TEST_CASE("extend_domain") {
  CHECK(extend_domain(Q0Condition{}, 7) == cond(2, {{7, {0, 0}}}));
  const auto p = cond(2, {{1, {0, 0}}});
  CHECK(extend_domain(p, 1) == p);
  const auto full = cond(2, {{1, {0, 0}}, {2, {0, 1}}, {3, {0, 0}}, {4, {0, 1}}});
  const auto grown = extend_domain(full, 5);
  CHECK(grown.ht == 3);
  CHECK(grown.contains(5));
  CHECK(validate_q0(grown).ok);
  CHECK(oracle::leq_q0(full, grown));
  for (const auto& q : enumerate_q0({1, 2}, 3)) {
    const auto r = extend_domain(q, 3);
    CHECK(r.contains(3));
    CHECK(validate_q0(r).ok);
    CHECK(oracle::leq_q0(q, r));
  }
}

TEST_CASE("apply_permutation") {
  const auto p = cond(2, {{1, {0, 0}}});
  CHECK(apply_permutation(LabelPermutation{}, p) == p);
  const auto h = LabelPermutation::transposition(1, 2);
  CHECK(apply_permutation(h, p) == cond(2, {{2, {0, 0}}}));
  CHECK(apply_permutation(h.inverse(), apply_permutation(h, p)) == p);
  CHECK_THROWS_AS(LabelPermutation(LabelMap<Label>{{1, 2}, {2, 2}}), PreconditionError);
  CHECK_THROWS_AS(LabelPermutation(LabelMap<Label>{{1, 2}}), PreconditionError);

  const LabelPermutation cyc(LabelMap<Label>{{1, 2}, {2, 3}, {3, 1}});
  const auto all = enumerate_q0({1, 2, 3}, 2);
  for (const auto& a : all) {
    for (const auto& b : all) {
      CHECK(leq_q0(a, b) == leq_q0(apply_permutation(cyc, a), apply_permutation(cyc, b)));
    }
  }
}

TEST_CASE("separativity_witness") {
  const auto r2 = separativity_witness(cond(3, {{1, {0, 1, 2}}}), cond(2, {{1, {0, 1}}}));
  CHECK(r2 == cond(3, {{1, {0, 1, 0}}}));
  CHECK_FALSE(compatible(cond(3, {{1, {0, 1, 2}}}), r2));

  const auto p1 = cond(2, {{1, {0, 0}}});
  const auto r1 = separativity_witness(p1, Q0Condition{});
  REQUIRE(r1.contains(1));
  CHECK(r1.ht >= 2);
  CHECK(r1.entries.at(1)[1] == 1);
  CHECK_FALSE(compatible(p1, r1));

  const auto q = cond(3, {{1, {0, 1, 0}}});
  CHECK(separativity_witness(p1, q) == q);
  CHECK_THROWS_AS(separativity_witness(p1, p1), PreconditionError);

  const auto all = enumerate_q0({1, 2}, 3);
  for (const auto& p : all) {
    for (const auto& s : all) {
      if (oracle::leq_q0(p, s)) continue;
      const auto r = separativity_witness(p, s);
      if (!oracle::leq_q0(s, r) || oracle_compatible(p, r)) FAIL_CHECK("bad witness");
    }
  }
}

TEST_CASE("homogeneity_witnesses") {
  const auto p = cond(2, {{1, {0, 0}}});
  const auto same = homogeneity_witnesses(p, p);
  CHECK(same.p_ext == p);
  CHECK(same.q_ext == p);
  CHECK(same.h.is_identity());

  const auto w = homogeneity_witnesses(p, cond(2, {{1, {0, 1}}}));
  CHECK(w.h(1) != 1);
  CHECK(w.p_ext.contains(1));
  CHECK(w.p_ext.contains(w.h(1)));

  const auto q = cond(2, {{1, {0, 1}}, {2, {0, 0}}});
  const auto t = homogeneity_witnesses(Q0Condition{}, q);
  CHECK(t.p_ext == apply_permutation(t.h, q));
  CHECK(t.q_ext == q);

  const auto small = enumerate_q0({1, 2}, 2);
  for (const auto& a : small) {
    for (const auto& b : small) {
      const auto hw = homogeneity_witnesses(a, b);
      CHECK(oracle::leq_q0(a, hw.p_ext));
      CHECK(oracle::leq_q0(b, hw.q_ext));
      LabelSet dom = hw.p_ext.domain();
      for (auto l : hw.q_ext.domain()) dom.insert(l);
      for (const auto& r : enumerate_q0(dom, std::max<std::uint32_t>(hw.p_ext.ht, hw.q_ext.ht) + 1,
                                        std::uint64_t{1} << 22)) {
        const bool up = oracle::leq_q0(hw.p_ext, r);
        const auto back = apply_permutation(hw.h.inverse(), r);
        if (up != oracle::leq_q0(hw.q_ext, back)) FAIL_CHECK("cone not preserved");
      }
    }
  }
}

TEST_CASE("reduction") {
  const auto inside = cond(2, {{1, {0, 0}}});
  CHECK(reduction(inside, {1, 2}) == inside);
  CHECK(reduction(cond(2, {{9, {0, 1}}}), {1, 2}) == cond(2, {{1, {0, 1}}}));
  CHECK(reduction(cond(2, {{1, {0, 0}}, {9, {0, 1}}}), {1, 2}) == cond(2, {{1, {0, 0}}, {2, {0, 1}}}));
  CHECK_THROWS_AS(reduction(cond(2, {{1, {0, 0}}, {2, {0, 0}}, {9, {0, 1}}}), {1, 2}), PreconditionError);

  const LabelSet x{1, 2};
  for (const auto& pp : enumerate_q0({1, 2, 9}, 2)) {
    if (pp.contains(9) && pp.contains(1) && pp.contains(2)) continue;
    const auto p = reduction(pp, x);
    for (auto l : p.domain()) CHECK(x.contains(l));
    for (const auto& q : enumerate_q0(x, 3)) {
      if (oracle::leq_q0(p, q) && !oracle_compatible(q, pp)) FAIL_CHECK("reduction contract");
    }
  }
}

TEST_CASE("enumerate_q0 counts") {
  CHECK(enumerate_q0({}, 3).size() == 1);
  CHECK(enumerate_q0({1}, 2).size() == 3);
  CHECK(enumerate_q0({1, 2}, 2).size() == 9);
  CHECK(count_q0({1, 2}, 2) == 9);

  // Literal count: sum over heights and domains of |lev_h T|^|dom|.
  for (std::uint32_t h = 0; h <= 4; ++h) {
    std::uint64_t expected = 1;
    for (std::uint32_t k = 2; k <= h; ++k) {
      const auto t = oracle::product_of_pow2(k);
      expected += 3 * t + 3 * t * t + t * t * t;
    }
    if (h <= 3) CHECK(enumerate_q0({1, 2, 3}, h, std::uint64_t{1} << 24).size() == expected);
    CHECK(count_q0({1, 2, 3}, h) == expected);
  }
  const auto all = enumerate_q0({1, 2}, 3);
  for (const auto& p : all) CHECK(validate_q0(p).ok);
  CHECK(std::set<Q0Condition>(all.begin(), all.end()).size() == all.size());
  CHECK_THROWS_AS(enumerate_q0({1, 2, 3}, 4, 1000), BudgetExceeded);
}

TEST_CASE("restrict_to and truncate") {
  const auto p = cond(3, {{1, {0, 0, 1}}, {2, {0, 1, 2}}});
  CHECK(restrict_to(p, {2}) == cond(3, {{2, {0, 1, 2}}}));
  CHECK(truncate(p, 2) == cond(2, {{1, {0, 0}}, {2, {0, 1}}}));
  CHECK(restrict_to(p, {}).entries.empty());
}
