#include "forcelab/iteration_q.hpp"

#include "enum_util.hpp"
#include "forcelab/errors.hpp"

namespace forcelab {

namespace {

constexpr std::uint64_t kUnset = ~std::uint64_t{0};

bool fits(std::size_t count, std::size_t h) { return h >= 64 || count <= (std::uint64_t{1} << h); }

// Values of p on `labels` pairwise distinct at every level in [from, ht p).
bool disjoint_on(const Q0Condition& p, const LabelMap<BSeq>& labels, std::size_t from) {
  if (labels.size() < 2) return true;
  boost::container::small_vector<std::uint64_t, 16> column;
  for (std::size_t i = from; i < p.ht; ++i) {
    column.clear();
    for (const auto& e : labels) column.push_back(p.entries.at(e.first)[i]);
    if (!detail::all_distinct(column)) return false;
  }
  return true;
}

}  // namespace

ValidationResult validate_stp_q(const StpQPair& a) {
  ValidationResult res = validate_q0(a.p);
  const auto m = a.q.ht();
  if (!a.q.f.is_valid()) res.fail("Q1 (a): f is not a level-wise bijection onto a_i");
  for (const auto& [label, x] : a.q.x) {
    if (x.size() != m || !x.is_valid()) {
      res.fail("Q1 (b): branch of label " + std::to_string(label) + " is not a node of level " + std::to_string(m));
    }
    if (!a.p.contains(label)) {
      res.fail("stp: label " + std::to_string(label) + " of dom q is missing from dom p");
    }
  }
  {
    std::vector<BSeq> seen;
    for (const auto& e : a.q.x) seen.push_back(e.second);
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      res.fail("Q1 (b): branches are not pairwise distinct");
    }
  }
  if (m > a.p.ht) res.fail("stp: ht q exceeds ht p");
  if (res.ok && !disjoint_on(a.p, a.q.x, m)) {
    res.fail("stp (c): values of p on dom q are not disjoint above ht q");
  }
  return res;
}

bool is_dq(const StpQPair& a) {
  if (a.p.ht != a.q.ht() || a.p.entries.size() != a.q.x.size()) return false;
  for (const auto& e : a.q.x) {
    if (!a.p.contains(e.first)) return false;
  }
  return validate_stp_q(a).ok;
}

DQElement::DQElement(StpQPair pair) : pair_(std::move(pair)) {
  if (!is_dq(pair_)) throw PreconditionError("not an element of D_Q");
}

bool leq_stp_q(const StpQPair& a, const StpQPair& b) {
  if (!a.q.f.is_prefix_of(b.q.f)) return false;
  if (!leq_q0(a.p, b.p)) return false;
  const auto lo = a.q.ht();
  const auto hi = b.q.ht();
  for (const auto& [label, xa] : a.q.x) {
    auto xb = b.q.x.find(label);
    if (xb == b.q.x.end() || !xa.is_prefix_of(xb->second)) return false;
    auto tb = b.p.entries.find(label);
    if (tb == b.p.entries.end() || tb->second.size() < hi) return false;
    for (std::size_t i = lo; i < hi; ++i) {
      if (tb->second[i] != b.q.f.at_prefix(xb->second, i)) return false;
    }
  }
  return true;
}

DQElement densify_q(const StpQPair& a) {
  if (auto v = validate_stp_q(a); !v) {
    throw PreconditionError("densify_q: invalid input: " + v.violations.front());
  }
  if (is_dq(a)) return DQElement(a);
  const std::size_t n = a.p.ht;
  const std::size_t m = a.q.ht();

  StpQPair out{a.p, {a.q.f, {}}};
  std::vector<bool> taken(std::size_t{1} << n, false);
  for (const auto& [label, x] : a.q.x) {
    // The extensions of x occupy a block of ranks; take the first free one.
    const std::uint64_t base = x.rank() << (n - m);
    std::uint64_t r = base;
    while (taken[r]) ++r;
    taken[r] = true;
    out.q.x.emplace(label, BSeq::from_rank(n, r));
  }
  std::uint64_t next_free = 0;
  for (const auto& e : a.p.entries) {
    if (out.q.x.contains(e.first)) continue;
    while (taken[next_free]) ++next_free;
    taken[next_free] = true;
    out.q.x.emplace(e.first, BSeq::from_rank(n, next_free));
  }

  for (std::size_t i = m; i < n; ++i) {
    std::vector<std::uint64_t> level(std::size_t{1} << i, kUnset);
    std::vector<bool> used(level.size(), false);
    auto place = [&](const BSeq& x, std::uint64_t value) {
      const auto node = x.prefix_rank(i);
      if (level[node] != kUnset || used[value]) return;
      level[node] = value;
      used[value] = true;
    };
    for (const auto& [label, x] : a.q.x) place(out.q.x.at(label), a.p.entries.at(label)[i]);
    for (const auto& [label, x] : out.q.x) place(x, a.p.entries.at(label)[i]);
    std::uint64_t v = 0;
    for (auto& slot : level) {
      if (slot != kUnset) continue;
      while (used[v]) ++v;
      slot = v;
      used[v] = true;
    }
    out.q.f.push_level(std::move(level));
  }
  return DQElement(std::move(out));
}

std::uint64_t count_dq(const LabelSet& labels, std::uint32_t max_ht) {
  std::uint64_t total = 1;
  for (std::uint32_t h = 2; h <= max_ht && !labels.empty(); ++h) {
    std::uint64_t per_f = 0;
    for (std::uint64_t k = 1; k <= labels.size(); ++k) {
      if (!fits(k, h)) break;
      const auto term = detail::sat_mul(
          detail::binomial(labels.size(), k),
          detail::sat_mul(detail::falling_factorial(level_size(h), k), detail::sat_pow(t_level_count(h), k)));
      per_f = detail::sat_add(per_f, term);
    }
    total = detail::sat_add(total, detail::sat_mul(count_level_maps(h), per_f));
  }
  return total;
}

std::vector<DQElement> enumerate_dq(const LabelSet& labels, std::uint32_t max_ht, std::uint64_t budget) {
  if (labels.size() > 32 || count_dq(labels, max_ht) > budget) {
    throw BudgetExceeded("enumerate_dq: fragment exceeds budget of " + std::to_string(budget));
  }
  std::vector<DQElement> out;
  out.emplace_back(StpQPair{});
  const auto subsets = detail::all_subsets(std::vector<Label>(labels.begin(), labels.end()));
  for (std::uint32_t h = 2; h <= max_ht && !labels.empty(); ++h) {
    const auto maps = enumerate_level_maps(h, budget);
    const auto tlevel = enumerate_t_level(h, budget);
    const auto nodes = level_size(h);
    for (const auto& f : maps) {
      for (const auto& dom : subsets) {
        if (dom.empty() || !fits(dom.size(), h)) continue;
        detail::for_each_injection(dom.size(), nodes, [&](const std::vector<std::uint64_t>& xs) {
          detail::for_each_tuple(dom.size(), tlevel.size(), [&](const std::vector<std::uint64_t>& ts) {
            StpQPair e{Q0Condition{h, {}}, Q1Part{f, {}}};
            for (std::size_t k = 0; k < dom.size(); ++k) {
              e.p.entries.emplace_hint(e.p.entries.end(), dom[k], tlevel[ts[k]]);
              e.q.x.emplace_hint(e.q.x.end(), dom[k], BSeq::from_rank(h, xs[k]));
            }
            out.emplace_back(std::move(e));
          });
        });
      }
    }
  }
  return out;
}

std::vector<StpQPair> enumerate_stp_q(const LabelSet& labels, std::uint32_t max_ht, std::uint64_t budget) {
  std::vector<StpQPair> out;
  auto push = [&](StpQPair e) {
    if (out.size() >= budget) throw BudgetExceeded("enumerate_stp_q: fragment exceeds budget of " + std::to_string(budget));
    out.push_back(std::move(e));
  };
  std::vector<std::vector<LevelMap>> maps;
  for (std::uint32_t m = 0; m <= max_ht; ++m) maps.push_back(enumerate_level_maps(m, budget));
  for (const auto& p : enumerate_q0(labels, max_ht, budget)) {
    const auto dom = p.domain();
    const auto dom_subsets = detail::all_subsets(std::vector<Label>(dom.begin(), dom.end()));
    for (std::uint32_t m = 0; m <= p.ht; ++m) {
      for (const auto& f : maps[m]) {
        for (const auto& sub : dom_subsets) {
          if (!fits(sub.size(), m)) continue;
          detail::for_each_injection(sub.size(), level_size(m), [&](const std::vector<std::uint64_t>& xs) {
            StpQPair e{p, Q1Part{f, {}}};
            for (std::size_t k = 0; k < sub.size(); ++k) {
              e.q.x.emplace_hint(e.q.x.end(), sub[k], BSeq::from_rank(m, xs[k]));
            }
            if (disjoint_on(e.p, e.q.x, m)) push(std::move(e));
          });
        }
      }
    }
  }
  return out;
}

}  // namespace forcelab
