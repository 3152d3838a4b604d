#include <doctest.h>

#include "forcelab/errors.hpp"
#include "forcelab/iteration_p.hpp"
#include "oracles.hpp"

using namespace forcelab;

namespace {

StpPPair pp(LevelMap f, std::initializer_list<std::pair<const Label, P1Entry>> entries) {
  StpPPair out;
  out.f = std::move(f);
  for (const auto& [a, e] : entries) out.entries.emplace(a, e);
  return out;
}

P1Entry entry(const char* x, TSeq t) { return P1Entry{BSeq::parse(x), std::move(t)}; }

bool comparable(const LevelMap& f, const LevelMap& g) {
  return oracle::f_contained(f, g) || oracle::f_contained(g, f);
}

bool literal_dp(const StpPPair& a) {
  std::set<BSeq> xs;
  for (const auto& [l, e] : a.entries) {
    if (e.x.size() != a.f.height() || e.t.size() != a.f.height()) return false;
    if (!xs.insert(e.x).second) return false;
  }
  return validate_stp_p(a).ok;
}

}  // namespace

TEST_CASE("leq_p0") {
  const auto f = LevelMap::identity(2);
  CHECK(leq_p0(f, f));
  CHECK(leq_p0(f, LevelMap::identity(3)));
  CHECK_FALSE(leq_p0(f, LevelMap({{0}, {1, 0}})));
  CHECK_FALSE(leq_p0(LevelMap::identity(3), f));
  const auto maps = enumerate_level_maps(3);
  for (const auto& a : maps) {
    for (const auto& b : enumerate_level_maps(2)) {
      CHECK(leq_p0(b, a) == oracle::f_contained(b, a));
      CHECK(leq_p0(a, b) == oracle::f_contained(a, b));
    }
  }
}

TEST_CASE("validate_stp_p") {
  CHECK(validate_stp_p(pp(LevelMap::identity(2), {})).ok);
  CHECK(validate_stp_p(pp(LevelMap::identity(2), {{1, entry("0", {0})}})).ok);
  CHECK_FALSE(validate_stp_p(pp(LevelMap::identity(1), {{1, entry("00", {0, 1})}})).ok);
  CHECK_FALSE(validate_stp_p(pp(LevelMap::identity(2), {{1, entry("0", {0, 0})}})).ok);
  CHECK_FALSE(validate_stp_p(pp(LevelMap::identity(2), {{1, entry("00", {0, 2})}})).ok);
  CHECK_FALSE(validate_stp_p(pp(LevelMap({{0}, {0, 0}}), {})).ok);
}

TEST_CASE("D_P membership") {
  CHECK(is_dp(pp(LevelMap::identity(2), {{1, entry("00", {0, 0})}, {2, entry("01", {0, 0})}})));
  const auto same = pp(LevelMap::identity(2), {{1, entry("00", {0, 0})}, {2, entry("00", {0, 1})}});
  CHECK_FALSE(is_dp(same));
  CHECK_THROWS_AS(DPElement{same}, PreconditionError);
  CHECK_FALSE(is_dp(pp(LevelMap::identity(2), {{1, entry("0", {0})}})));
  for (const auto& a : enumerate_stp_p({1, 2}, 2)) CHECK(is_dp(a) == literal_dp(a));
}

TEST_CASE("leq_stp_p examples") {
  const auto a = pp(LevelMap::identity(2), {{1, entry("0", {0})}});
  CHECK(leq_stp_p(a, a));
  const auto f = LevelMap({{0}, {1, 0}});
  const auto a1 = pp(f, {{1, entry("0", {0})}});
  const auto b = pp(f, {{1, entry("01", {0, 1})}});
  CHECK(leq_stp_p(a1, b));
  CHECK(oracle::leq_stp_p(a1, b));
  const auto c = pp(f, {{1, entry("01", {0, 0})}});
  CHECK_FALSE(leq_stp_p(a1, c));
  CHECK_FALSE(oracle::leq_stp_p(a1, c));
  CHECK(leq_stp_p(a1, densify_p(a1).pair()));
}

TEST_CASE("leq_stp_p agrees with the literal definition") {
  const auto small = enumerate_stp_p({1, 2}, 2);
  CHECK(small.size() == 308);
  for (const auto& a : small) {
    for (const auto& b : small) {
      if (leq_stp_p(a, b) != oracle::leq_stp_p(a, b)) FAIL_CHECK("leq_stp_p mismatch");
    }
  }
  const auto tall = enumerate_stp_p({1, 2}, 3, std::uint64_t{1} << 22);
  std::uint64_t above = 0;
  for (std::size_t k = 0; k < tall.size(); k += 11) {
    for (const auto& a : small) {
      const bool l = leq_stp_p(a, tall[k]);
      above += l;
      if (l != oracle::leq_stp_p(a, tall[k])) FAIL_CHECK("leq_stp_p mismatch at height 3");
    }
  }
  CHECK(above > 0);
}

TEST_CASE("densify_p examples") {
  const auto in = pp(LevelMap::identity(2), {{1, entry("01", {0, 1})}});
  CHECK(densify_p(in).pair() == in);

  const auto a = pp(LevelMap::identity(1), {{1, entry("0", {0})}, {2, entry("0", {0})}});
  const auto d = densify_p(a);
  CHECK(d.ht() == 2);
  CHECK(d.entries().at(1).x.to_string() == "00");
  CHECK(d.entries().at(2).x.to_string() == "01");
  for (const auto& [l, e] : d.entries()) CHECK(e.t[1] == d.f()(e.x.prefix(1)));
  CHECK(oracle::leq_stp_p(a, d.pair()));

  const auto bare = pp(LevelMap::identity(3), {});
  CHECK(densify_p(bare).pair() == bare);
}

TEST_CASE("densify_p lands in D_P above its input and is idempotent") {
  for (const auto& a : enumerate_stp_p({1, 2}, 3, std::uint64_t{1} << 22)) {
    const auto d = densify_p(a);
    if (!literal_dp(d.pair()) || !oracle::leq_stp_p(a, d.pair())) FAIL_CHECK("densify_p");
    if (densify_p(d.pair()) != d) FAIL_CHECK("densify_p not idempotent");
  }
  const auto wide = pp(LevelMap::identity(1), {{1, entry("0", {0})}, {2, entry("0", {0})}, {3, entry("1", {0})},
                                               {4, entry("0", {0})}, {5, entry("", {})}});
  const auto d = densify_p(wide);
  CHECK(literal_dp(d.pair()));
  CHECK(oracle::leq_stp_p(wide, d.pair()));
}

TEST_CASE("extend_dp_to_height") {
  for (const auto& a : enumerate_dp({1, 2}, 2)) {
    const auto b = extend_dp_to_height(a, 4);
    CHECK(b.ht() == 4);
    CHECK(literal_dp(b.pair()));
    CHECK(oracle::leq_stp_p(a.pair(), b.pair()));
    // Above each entry's height the t's follow f, so distinct branches keep distinct values.
    for (const auto& [l1, e1] : b.entries()) {
      for (const auto& [l2, e2] : b.entries()) {
        if (l1 >= l2) continue;
        for (std::size_t i = a.ht(); i < 4; ++i) {
          if (!(e1.x.prefix(i) == e2.x.prefix(i))) CHECK(e1.t[i] != e2.t[i]);
        }
      }
    }
  }
}

TEST_CASE("two_incompatible_extensions") {
  for (std::size_t h = 0; h <= 3; ++h) {
    for (const auto& f : enumerate_level_maps(h)) {
      const auto [b, c] = two_incompatible_extensions(f);
      CHECK(b.is_valid());
      CHECK(c.is_valid());
      CHECK(oracle::f_contained(f, b));
      CHECK(oracle::f_contained(f, c));
      CHECK(b != f);
      CHECK(c != f);
      CHECK_FALSE(comparable(b, c));
      CHECK_FALSE(oracle_p0_compatible(b, c, std::max(b.height(), c.height())));
    }
  }
  const auto [b0, c0] = two_incompatible_extensions(LevelMap{});
  CHECK(b0.height() == 2);
  CHECK(c0.height() == 2);

  for (const auto& a : enumerate_dp({1, 2}, 2)) {
    const auto [b, c] = two_incompatible_extensions(a.pair());
    CHECK(is_dp(b));
    CHECK(is_dp(c));
    CHECK(oracle::leq_stp_p(a.pair(), b));
    CHECK(oracle::leq_stp_p(a.pair(), c));
    CHECK(b != a.pair());
    CHECK(c != a.pair());
    CHECK_FALSE(comparable(b.f, c.f));
  }
}

TEST_CASE("compatibility oracles") {
  const auto maps = enumerate_level_maps(3);
  for (std::size_t i = 0; i < maps.size(); i += 5) {
    for (std::size_t j = 0; j < maps.size(); j += 3) {
      CHECK(oracle_p0_compatible(maps[i], maps[j], 3) == comparable(maps[i], maps[j]));
      CHECK(oracle_p0_compatible(maps[i].truncated(2), maps[j], 3) == comparable(maps[i].truncated(2), maps[j]));
    }
  }
  const auto a = pp(LevelMap::identity(2), {{1, entry("0", {0})}});
  const auto b = pp(LevelMap::identity(2), {{1, entry("01", {0, 0})}});
  const auto c = pp(LevelMap::identity(2), {{1, entry("00", {0, 1})}});
  const auto d = pp(LevelMap::identity(1), {{2, entry("1", {0})}});
  CHECK(oracle_stp_p_compatible(a, b, 2));
  CHECK(oracle_stp_p_compatible(b, d, 2));
  CHECK_FALSE(oracle_stp_p_compatible(b, c, 3));
  // Entry 1 of a must follow f at level 1: t(1) = f("0") = 0 rules out c.
  CHECK_FALSE(oracle_stp_p_compatible(a, c, 3));
}

TEST_CASE("enumerate_dp counts") {
  CHECK(enumerate_dp({}, 2).size() == 4);
  CHECK(count_dp({}, 2) == 4);
  for (const auto& a : enumerate_dp({1, 2}, 1)) CHECK(a.entries().size() <= 2);
  for (std::uint32_t h = 0; h <= 3; ++h) {
    std::uint64_t n = 0;
    for (const auto& a : enumerate_stp_p({1, 2}, h, std::uint64_t{1} << 22)) n += literal_dp(a);
    CHECK(enumerate_dp({1, 2}, h, std::uint64_t{1} << 22).size() == n);
    CHECK(count_dp({1, 2}, h) == n);
  }
  // ({1}, 2): f at ht 0, 1, 2 has 1, 1, 2 choices; one entry needs ht >= 0 and has
  // |lev_h B| * |lev_h T| options.
  CHECK(count_dp({1}, 2) == (1 + 1) + (1 + 2 * 1) + 2 * (1 + 4 * 2));
}
