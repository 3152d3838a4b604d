#include "forcelab/suites.hpp"

#include <chrono>

#include "forcelab/errors.hpp"
#include "forcelab/sampling.hpp"
#include "saturating.hpp"

namespace forcelab {

namespace {

constexpr std::size_t kMaxStoredFailures = 1000;
// The sigma half of the claims suite runs over every pair when there are at most this many.
constexpr std::uint64_t kExhaustivePairLimit = std::uint64_t{1} << 25;

struct SuiteInfo {
  Suite suite;
  std::string_view name;
  std::vector<Label> labels;
  std::uint32_t max_ht;
  std::uint64_t samples;
};

const std::vector<SuiteInfo>& table() {
  static const std::vector<SuiteInfo> t{
      {Suite::OrderLaws, "order-laws", {1, 2}, 3, 0},
      {Suite::CompatOracle, "compat-oracle", {1, 2}, 4, 0},
      {Suite::Separativity, "separativity", {1, 2}, 3, 0},
      {Suite::Reduction, "reduction", {1, 2}, 3, 0},
      {Suite::Claims, "claims", {1, 2, 3}, 4, 100000},
      {Suite::Refute, "refute", {1, 2, 3}, 3, 0},
      {Suite::Densify, "densify", {1, 2}, 3, 10000},
      {Suite::Iso, "iso", {1, 2}, 3, 10000},
      {Suite::Generic, "generic", {1, 2, 3, 4, 5, 6, 7, 8}, 10, 0},
      {Suite::Atomless, "atomless", {1, 2}, 3, 0},
      {Suite::All, "all", {}, 0, 0},
  };
  return t;
}

const SuiteInfo& info(Suite s) {
  for (const auto& i : table()) {
    if (i.suite == s) return i;
  }
  throw std::logic_error("unknown suite");
}

template <class Fn>
SuiteReport timed(Suite s, Fn&& body) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport rep;
  rep.suite = std::string(suite_name(s));
  body(rep);
  rep.finish();
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

std::vector<Label> as_vector(const LabelSet& s) { return {s.begin(), s.end()}; }

// Labels plus n fresh ones above the largest, for the larger random instances.
std::vector<Label> widened(const LabelSet& s, std::size_t n) {
  auto out = as_vector(s);
  Label next = out.empty() ? 1 : out.back() + 1;
  for (std::size_t k = 0; k < n; ++k) out.push_back(next++);
  return out;
}

Json pair_input(const char* ka, const Json& a, const char* kb, const Json& b) {
  Json out;
  out[ka] = a;
  out[kb] = b;
  return out;
}

template <class T, class Enc>
void record_order_laws(SuiteReport& rep, const char* name, const std::vector<T>& elems, const OrderLawReport& laws,
                       Enc&& enc) {
  rep.cases += laws.checks;
  for (const auto& v : laws.violations) {
    Json in;
    in["order"] = name;
    in["law"] = v.law;
    in["a"] = enc(elems[v.a]);
    in["b"] = enc(elems[v.b]);
    in["c"] = enc(elems[v.c]);
    rep.fail(std::move(in), std::string(name) + " violates " + v.law);
  }
  if (laws.violation_count > laws.violations.size()) {
    rep.fail(Json{{"order", name}}, std::to_string(laws.violation_count - laws.violations.size()) +
                                        " further violations not listed");
  }
}

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
  for (const auto& i : table()) {
    if (i.name == name) return i.suite;
  }
  return std::nullopt;
}

std::string_view suite_name(Suite s) { return info(s).name; }

const std::vector<Suite>& individual_suites() {
  static const std::vector<Suite> all{Suite::OrderLaws, Suite::CompatOracle, Suite::Separativity, Suite::Reduction,
                                      Suite::Claims,    Suite::Refute,       Suite::Densify,      Suite::Iso,
                                      Suite::Generic,   Suite::Atomless};
  return all;
}

SuiteParams resolve(const SuiteConfig& cfg, Suite s) {
  const auto& i = info(s);
  SuiteParams p;
  const auto& labels = cfg.labels ? *cfg.labels : i.labels;
  p.labels.insert(labels.begin(), labels.end());
  p.max_ht = cfg.max_ht.value_or(i.max_ht);
  p.seeds = cfg.seeds.value_or(100);
  p.seed = cfg.seed;
  p.budget = cfg.budget;
  p.samples = cfg.samples.value_or(i.samples);
  p.extra_label = cfg.extra_label;
  if (p.max_ht > 16) throw PreconditionError("max height " + std::to_string(p.max_ht) + " is out of range");
  if (p.labels.size() > 16) throw PreconditionError("at most 16 labels are supported");
  return p;
}

void SuiteReport::fail(Json input, std::string detail) {
  if (failures.size() < kMaxStoredFailures) failures.push_back({std::move(input), std::move(detail)});
}

void SuiteReport::finish() {
  std::vector<std::pair<std::string, SuiteFailure>> keyed;
  for (auto& f : failures) keyed.emplace_back(dump(f.input), std::move(f));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second.detail < b.second.detail;
  });
  failures.clear();
  for (auto& k : keyed) failures.push_back(std::move(k.second));
}

Json encode(const SuiteReport& r) {
  Json out;
  out["suite"] = r.suite;
  out["cases"] = r.cases;
  out["failures"] = Json::array();
  for (const auto& f : r.failures) out["failures"].push_back(Json{{"input", f.input}, {"detail", f.detail}});
  out["pass"] = r.pass();
  out["wall_ms"] = r.wall_ms;
  return out;
}

SuiteReport run_order_laws(const SuiteParams& p) {
  return timed(Suite::OrderLaws, [&](SuiteReport& rep) {
    const auto q0 = enumerate_q0(p.labels, p.max_ht, p.budget);
    record_order_laws(rep, "leq_q0", q0, check_partial_order(std::span<const Q0Condition>(q0), leq_q0),
                      [](const Q0Condition& c) { return encode(c); });

    const auto stq = enumerate_stp_q(p.labels, p.max_ht, p.budget);
    record_order_laws(
        rep, "leq_stp_q", stq,
        check_partial_order_by_f(
            std::span<const StpQPair>(stq), [](const StpQPair& a) -> const LevelMap& { return a.q.f; },
            [](const StpQPair& a, const StpQPair& b) { return leq_stp_q(a, b); }),
        [](const StpQPair& c) { return encode(c); });

    const auto stp = enumerate_stp_p(p.labels, p.max_ht, p.budget);
    record_order_laws(
        rep, "leq_stp_p", stp,
        check_partial_order_by_f(
            std::span<const StpPPair>(stp), [](const StpPPair& a) -> const LevelMap& { return a.f; },
            [](const StpPPair& a, const StpPPair& b) { return leq_stp_p(a, b); }),
        [](const StpPPair& c) { return encode(c); });
  });
}

SuiteReport run_compat_oracle(const SuiteParams& p) {
  return timed(Suite::CompatOracle, [&](SuiteReport& rep) {
    const auto conds = enumerate_q0(p.labels, p.max_ht, p.budget);
    for (const auto& a : conds) {
      for (const auto& b : conds) {
        ++rep.cases;
        const bool fast = compatible(a, b);
        const bool slow = oracle_compatible(a, b, p.budget);
        if (fast != slow) {
          rep.fail(pair_input("p", encode(a), "q", encode(b)),
                   std::string("compatible says ") + (fast ? "true" : "false") + ", oracle says " + (slow ? "true" : "false"));
        }
      }
    }
  });
}

SuiteReport run_separativity(const SuiteParams& p) {
  return timed(Suite::Separativity, [&](SuiteReport& rep) {
    const auto conds = enumerate_q0(p.labels, p.max_ht, p.budget);
    for (const auto& a : conds) {
      for (const auto& b : conds) {
        if (leq_q0(a, b)) continue;
        ++rep.cases;
        const auto r = separativity_witness(a, b);
        std::string why;
        if (!validate_q0(r)) why = "witness is not a valid condition";
        else if (!leq_q0(b, r)) why = "witness does not extend q";
        else if (compatible(a, r)) why = "witness is compatible with p";
        else if (oracle_compatible(a, r, p.budget)) why = "oracle finds a common extension of p and the witness";
        if (!why.empty()) {
          Json in = pair_input("p", encode(a), "q", encode(b));
          in["r"] = encode(r);
          rep.fail(std::move(in), why);
        }
      }
    }
  });
}

SuiteReport run_reduction(const SuiteParams& p) {
  return timed(Suite::Reduction, [&](SuiteReport& rep) {
    if (p.labels.contains(p.extra_label)) throw PreconditionError("reduction: the extra label must lie outside the labels");
    LabelSet y = p.labels;
    y.insert(p.extra_label);
    const auto primes = enumerate_q0(y, p.max_ht, p.budget);
    const auto above = enumerate_q0(p.labels, p.max_ht + 1, p.budget);
    for (const auto& pp : primes) {
      // Too few spare labels in X: outside the precondition of reduction.
      std::size_t outside = 0, inside = 0;
      for (const auto& e : pp.entries) (p.labels.contains(e.first) ? inside : outside) += 1;
      if (p.labels.size() - inside < outside) continue;
      const auto r = reduction(pp, p.labels);
      for (const auto& q : above) {
        if (!leq_q0(r, q)) continue;
        ++rep.cases;
        const bool fast = compatible(q, pp);
        const bool slow = oracle_compatible(q, pp, p.budget);
        if (!fast || !slow) {
          Json in = pair_input("p_prime", encode(pp), "q", encode(q));
          in["reduction"] = encode(r);
          rep.fail(std::move(in), fast ? "oracle finds no common extension" : "q is incompatible with p'");
        }
      }
    }
  });
}

SuiteReport run_claims_atoms(const SuiteParams& p) {
  return timed(Suite::Claims, [&](SuiteReport& rep) {
    rep.suite = "claims-atoms";
    const auto conds = enumerate_q0(p.labels, p.max_ht, p.budget);
    for (const auto& q : conds) {
      for (Label alpha : p.labels) {
        for (std::uint32_t i = 0; i < p.max_ht; ++i) {
          for (std::uint64_t j = 0; j < level_size(i); ++j) {
            ++rep.cases;
            const AtomicSentence s(alpha, i, j);
            const bool forced = forces_atom(q, s);
            const auto w = n_witness(q, s);
            std::string why;
            if (forced != w.has_value()) {
              why = "forces_atom and n_witness disagree";
            } else if (w) {
              // The witness must lie in N_{alpha i j} and below q.
              const bool in_n = w->entries.size() == 1 && w->contains(alpha) && w->ht > i &&
                                w->entries.at(alpha)[i] == j && validate_q0(*w).ok;
              if (!in_n) why = "witness is not in N";
              else if (!leq_q0(*w, q)) why = "witness is not below q";
            } else if (q.contains(alpha) && q.ht > i) {
              // The only candidate below q is q cut down to alpha; it must miss N.
              const auto c = truncate(restrict_to(q, LabelSet{alpha}), std::max(i + 1, 2u));
              if (c.entries.at(alpha)[i] == j) why = "a member of N lies below q but no witness was found";
            }
            if (!why.empty()) rep.fail(pair_input("q", encode(q), "s", encode(s)), why);
          }
        }
      }
    }
  });
}

SuiteReport run_claims_sigma(const SuiteParams& p) {
  return timed(Suite::Claims, [&](SuiteReport& rep) {
    rep.suite = "claims-sigma";
    auto check = [&](const Q0Condition& a, const Q0Condition& b) {
      ++rep.cases;
      const auto h = std::max(b.ht, p.max_ht);
      const bool leq = leq_q0(a, b);
      const bool forced = forces_sigma_set(b, a, h);
      if (leq != forced) {
        rep.fail(pair_input("p", encode(a), "q", encode(b)),
                 std::string("leq_q0 is ") + (leq ? "true" : "false") + " but forcing Sigma_p is " + (forced ? "true" : "false"));
      }
    };
    const auto full = count_q0(p.labels, p.max_ht);
    if (detail::sat_mul(full, full) <= kExhaustivePairLimit) {
      const auto conds = enumerate_q0(p.labels, p.max_ht, p.budget);
      for (const auto& a : conds) {
        for (const auto& b : conds) check(a, b);
      }
      return;
    }
    const auto core = enumerate_q0(p.labels, std::min(p.max_ht, 3u), p.budget);
    for (const auto& a : core) {
      for (const auto& b : core) check(a, b);
    }
    const auto conds = enumerate_q0(p.labels, p.max_ht, p.budget);
    const auto labels = as_vector(p.labels);
    Rng rng(p.seed);
    for (std::uint64_t k = 0; k < p.samples; ++k) {
      const auto& a = conds[draw(rng, conds.size())];
      if (k % 2 == 0) {
        check(a, conds[draw(rng, conds.size())]);
      } else {
        check(a, random_q0_extension(rng, a, labels, p.max_ht));
      }
    }
  });
}

Json refutation_report(const Q0Condition& p, const Q0Condition& p_prime, Label alpha, Label beta) {
  const auto q = refuter_condition(alpha, beta);
  const auto r = refuting_common_extension(p, p_prime, q, alpha, beta);
  Json out;
  out["inputs"] = Json{{"p", encode(p)}, {"p_prime", encode(p_prime)}, {"q", encode(q)}, {"alpha", alpha}, {"beta", beta}};
  out["r"] = encode(r);
  out["checks"] = Json{{"geq_p", leq_q0(p, r)}, {"geq_p_prime", leq_q0(p_prime, r)}, {"not_geq_q", !leq_q0(q, r)}};
  return out;
}

SuiteReport run_refute(const SuiteParams& p) {
  return timed(Suite::Refute, [&](SuiteReport& rep) {
    if (p.labels.empty()) throw PreconditionError("refute: needs at least one label");
    const Label alpha = *p.labels.begin();
    const Label beta = p.extra_label;
    if (p.labels.contains(beta)) throw PreconditionError("refute: the extra label must lie outside the labels");
    LabelSet right(p.labels.begin(), p.labels.end());
    right.erase(alpha);
    right.insert(beta);
    std::vector<Q0Condition> lefts, rights;
    for (auto& c : enumerate_q0(p.labels, p.max_ht, p.budget)) {
      if (c.contains(alpha)) lefts.push_back(std::move(c));
    }
    for (auto& c : enumerate_q0(right, p.max_ht, p.budget)) {
      if (c.contains(beta)) rights.push_back(std::move(c));
    }
    for (const auto& a : lefts) {
      for (const auto& b : rights) {
        if (!compatible(a, b)) continue;
        ++rep.cases;
        const auto report = refutation_report(a, b, alpha, beta);
        const auto& checks = report["checks"];
        const auto r = decode<Q0Condition>(report["r"]);
        if (!validate_q0(r)) rep.fail(report["inputs"], "r is not a valid condition");
        for (const auto& [name, ok] : checks.items()) {
          if (!ok.get<bool>()) rep.fail(report["inputs"], name + " fails");
        }
      }
    }
  });
}

SuiteReport run_densify(const SuiteParams& p) {
  return timed(Suite::Densify, [&](SuiteReport& rep) {
    auto check_q = [&](const StpQPair& a) {
      ++rep.cases;
      const auto d = densify_q(a);
      std::string why;
      if (!is_dq(d.pair())) why = "result is not in D_Q";
      else if (!(d.p() == a.p)) why = "result changes p";
      else if (!leq_stp_q(a, d.pair())) why = "result is not above the input";
      else if (!(densify_q(d.pair()) == d)) why = "not idempotent";
      else if (is_dq(a) && !(d.pair() == a)) why = "moves an element of D_Q";
      if (!why.empty()) rep.fail(Json{{"stp_q", encode(a)}}, why);
    };
    auto check_p = [&](const StpPPair& a) {
      ++rep.cases;
      const auto d = densify_p(a);
      std::string why;
      bool same_domain = d.entries().size() == a.entries.size();
      for (const auto& e : a.entries) same_domain = same_domain && d.entries().contains(e.first);
      if (!is_dp(d.pair())) why = "result is not in D_P";
      else if (!same_domain) why = "result changes the domain";
      else if (!leq_stp_p(a, d.pair())) why = "result is not above the input";
      else if (!(densify_p(d.pair()) == d)) why = "not idempotent";
      else if (is_dp(a) && !(d.pair() == a)) why = "moves an element of D_P";
      if (!why.empty()) rep.fail(Json{{"stp_p", encode(a)}}, why);
    };
    for (const auto& a : enumerate_stp_q(p.labels, p.max_ht, p.budget)) check_q(a);
    for (const auto& a : enumerate_stp_p(p.labels, p.max_ht, p.budget)) check_p(a);
    const auto labels = widened(p.labels, 2);
    Rng rng(p.seed);
    for (std::uint64_t k = 0; k < p.samples; ++k) {
      check_q(random_stp_q(rng, labels, p.max_ht + 2));
      check_p(random_stp_p(rng, labels, p.max_ht + 2));
    }
  });
}

SuiteReport run_iso(const SuiteParams& p) {
  return timed(Suite::Iso, [&](SuiteReport& rep) {
    auto absorb = [&](const IsoReport& iso) {
      rep.cases += iso.checked_pairs;
      for (const auto& f : iso.failures) {
        Json in{{"a", encode(f.a)}};
        if (f.b) in["b"] = encode(*f.b);
        rep.fail(std::move(in), f.kind + (f.kind == "order" ? std::string(" mismatch: leq_stp_p ") + (f.leq_p ? "true" : "false") +
                                                                   ", leq_stp_q " + (f.leq_q ? "true" : "false")
                                                             : std::string(" fails")));
      }
    };
    absorb(check_order_iso(p.labels, p.max_ht, p.budget));
    for (const auto& a : enumerate_dp(p.labels, p.max_ht, p.budget)) {
      ++rep.cases;
      const auto r = restrict_dp(a);
      if (!leq_stp_p(a.pair(), r.pair())) rep.fail(Json{{"dp", encode(a)}}, "restriction is not above the input");
    }
    const auto labels = widened(p.labels, 2);
    Rng rng(p.seed);
    IsoReport sampled;
    for (std::uint64_t k = 0; k < p.samples; ++k) {
      const auto a = random_dp_star(rng, labels, p.max_ht + 3);
      const auto b = k % 2 == 0 ? random_dp_star_extension(rng, a, labels, p.max_ht + 3)
                                : random_dp_star(rng, labels, p.max_ht + 3);
      check_iso_pair(a, b, sampled);
    }
    absorb(sampled);
  });
}

SuiteReport run_generic(const SuiteParams& p) {
  return timed(Suite::Generic, [&](SuiteReport& rep) {
    for (std::uint64_t s = p.seed; s < p.seed + p.seeds; ++s) {
      const Json in{{"labels", encode(p.labels)}, {"n", p.max_ht}, {"seed", s}};
      const auto tr = build_filter(p.labels, p.max_ht, s);
      ++rep.cases;
      if (auto v = validate_trace(tr); !v) rep.fail(in, "invalid trace: " + v.violations.front());
      if (tr.top().ht() < p.max_ht) rep.fail(in, "trace stops below the target height");
      if (tr.top().p().entries.size() != p.labels.size()) rep.fail(in, "trace misses a label");
      ++rep.cases;
      if (!(build_filter(p.labels, p.max_ht, s).chain == tr.chain)) rep.fail(in, "same seed gives a different trace");

      const auto g = extract_objects(tr);
      const auto coh = check_coherence(g);
      const auto ad = check_almost_disjoint(g);
      rep.cases += coh.checks + ad.checks;
      if (!coh.pass()) rep.fail(in, std::to_string(coh.violations.size()) + " coherence violations");
      if (!ad.pass()) rep.fail(in, std::to_string(ad.violations.size()) + " almost-disjointness violations");

      if (p.labels.empty() || p.max_ht < 2) continue;
      rep.cases += 1;
      if (auto n = check_coherence(corrupt_coherence(g)).violations.size(); n != 1) {
        rep.fail(in, "corrupted t gives " + std::to_string(n) + " coherence violations, expected 1");
      }
      if (p.labels.size() >= 2) {
        rep.cases += 1;
        if (auto n = check_almost_disjoint(forge_collision(g)).violations.size(); n != 1) {
          rep.fail(in, "forged f gives " + std::to_string(n) + " almost-disjointness violations, expected 1");
        }
      }
    }
  });
}

SuiteReport run_atomless(const SuiteParams& p) {
  return timed(Suite::Atomless, [&](SuiteReport& rep) {
    for (std::uint32_t h = 0; h <= p.max_ht; ++h) {
      for (const auto& f : enumerate_level_maps(h, p.budget)) {
        ++rep.cases;
        const auto [b, c] = two_incompatible_extensions(f);
        std::string why;
        if (!b.is_valid() || !c.is_valid()) why = "extension is not a valid level map";
        else if (!leq_p0(f, b) || !leq_p0(f, c) || b == f || c == f) why = "extensions are not proper";
        else if (oracle_p0_compatible(b, c, std::max(b.height(), c.height()), p.budget)) why = "extensions are compatible";
        if (!why.empty()) rep.fail(Json{{"f", encode(f)}}, why);
      }
    }
    for (const auto& a : enumerate_dp(p.labels, p.max_ht, p.budget)) {
      ++rep.cases;
      const auto [b, c] = two_incompatible_extensions(a.pair());
      std::string why;
      if (!is_dp(b) || !is_dp(c)) why = "extension leaves D_P";
      else if (!leq_stp_p(a.pair(), b) || !leq_stp_p(a.pair(), c) || b == a.pair() || c == a.pair()) why = "extensions are not proper";
      else if (oracle_stp_p_compatible(b, c, std::max(b.f.height(), c.f.height()), p.budget)) why = "extensions are compatible";
      if (!why.empty()) rep.fail(Json{{"dp", encode(a)}}, why);
    }
  });
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  auto one = [&](Suite s) -> SuiteReport {
    const auto p = resolve(cfg, s);
    switch (s) {
      case Suite::OrderLaws: return run_order_laws(p);
      case Suite::CompatOracle: return run_compat_oracle(p);
      case Suite::Separativity: return run_separativity(p);
      case Suite::Reduction: return run_reduction(p);
      case Suite::Claims: {
        auto a = run_claims_atoms(p);
        auto b = run_claims_sigma(p);
        SuiteReport out;
        out.suite = "claims";
        out.cases = a.cases + b.cases;
        out.wall_ms = a.wall_ms + b.wall_ms;
        for (auto* r : {&a, &b}) {
          for (auto& f : r->failures) out.fail(std::move(f.input), r->suite + ": " + f.detail);
        }
        out.finish();
        return out;
      }
      case Suite::Refute: return run_refute(p);
      case Suite::Densify: return run_densify(p);
      case Suite::Iso: return run_iso(p);
      case Suite::Generic: return run_generic(p);
      case Suite::Atomless: return run_atomless(p);
      case Suite::All: break;
    }
    throw std::logic_error("unreachable");
  };
  if (cfg.suite != Suite::All) return one(cfg.suite);
  SuiteReport out;
  out.suite = "all";
  for (Suite s : individual_suites()) {
    auto r = one(s);
    out.cases += r.cases;
    out.wall_ms += r.wall_ms;
    for (auto& f : r.failures) out.fail(std::move(f.input), r.suite + ": " + f.detail);
  }
  out.finish();
  return out;
}

}  // namespace forcelab
