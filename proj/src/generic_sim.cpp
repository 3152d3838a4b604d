#include "forcelab/generic_sim.hpp"

#include <map>

#include "forcelab/errors.hpp"
#include "forcelab/sampling.hpp"

namespace forcelab {

namespace {

bool fits(std::size_t count, std::size_t h) { return h >= 64 || count <= (std::uint64_t{1} << h); }

void add_label(StpQPair& cur, Label label, Rng& rng) {
  if (cur.p.entries.empty()) {
    cur.p.ht = 2;
    cur.q.f = random_level_map(rng, 2);
  }
  const auto h = cur.p.ht;
  std::uint64_t r;
  bool used;
  do {
    r = draw(rng, level_size(h));
    used = false;
    for (const auto& e : cur.q.x) used = used || e.second.rank() == r;
  } while (used);
  cur.q.x.emplace(label, BSeq::from_rank(h, r));
  cur.p.entries.emplace(label, random_t(rng, h));
}

void raise_height(StpQPair& cur, Rng& rng) {
  const auto h = cur.p.ht;
  auto level = random_permutation(rng, level_size(h));
  for (auto& [label, x] : cur.q.x) {
    cur.p.entries.at(label).push_back(level[x.rank()]);
    x.push_back(static_cast<std::uint8_t>(draw(rng, 2)));
  }
  cur.q.f.push_level(std::move(level));
  ++cur.p.ht;
}

}  // namespace

FilterTrace build_filter(const LabelSet& labels, std::uint32_t n, std::uint64_t seed) {
  if (n > kMaxLevel || !fits(labels.size(), n)) {
    throw PreconditionError("build_filter: " + std::to_string(labels.size()) + " labels do not fit at height " +
                            std::to_string(n));
  }
  if (labels.empty() && n > 0) {
    throw PreconditionError("build_filter: without labels the chain cannot leave height 0");
  }
  Rng rng(seed);
  FilterTrace tr;
  tr.chain.emplace_back(StpQPair{});
  std::vector<Label> pending(labels.begin(), labels.end());
  StpQPair cur;
  while (!pending.empty() || cur.p.ht < n) {
    bool add;
    if (cur.p.entries.empty()) {
      add = true;
    } else if (pending.empty()) {
      add = false;
    } else if (!fits(cur.p.entries.size() + 1, cur.p.ht)) {
      add = false;
    } else {
      add = cur.p.ht >= n || draw(rng, 2) == 0;
    }
    if (add) {
      const auto k = draw(rng, pending.size());
      const Label label = pending[k];
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(k));
      add_label(cur, label, rng);
      tr.entry_height.emplace(label, cur.p.ht);
    } else {
      raise_height(cur, rng);
    }
    tr.chain.emplace_back(cur);
  }
  return tr;
}

ValidationResult validate_trace(const FilterTrace& tr) {
  ValidationResult res;
  if (tr.chain.empty()) {
    res.fail("trace: empty chain");
    return res;
  }
  if (!tr.chain.front().p().is_trivial()) res.fail("trace: chain does not start at the trivial element");
  for (std::size_t k = 1; k < tr.chain.size(); ++k) {
    if (!leq_stp_q(tr.chain[k - 1], tr.chain[k]) || tr.chain[k - 1] == tr.chain[k]) {
      res.fail("trace: step " + std::to_string(k) + " is not a proper extension");
    }
  }
  const auto& top = tr.top().p();
  if (tr.entry_height.size() != top.entries.size()) res.fail("trace: entry heights do not cover the domain");
  for (const auto& [label, h] : tr.entry_height) {
    auto first = std::find_if(tr.chain.begin(), tr.chain.end(), [&](const DQElement& d) { return d.p().contains(label); });
    if (first == tr.chain.end()) {
      res.fail("trace: label " + std::to_string(label) + " never enters");
    } else if (first->ht() != h) {
      res.fail("trace: entry height of label " + std::to_string(label) + " is wrong");
    }
  }
  return res;
}

GenericObjects extract_objects(const FilterTrace& tr) {
  const auto& top = tr.top();
  return GenericObjects{top.q().f, top.q().x, top.p().entries, tr.entry_height};
}

GenericReport check_coherence(const GenericObjects& g) {
  GenericReport rep;
  const auto n = g.height();
  for (const auto& [alpha, t] : g.t) {
    const auto& x = g.x.at(alpha);
    const auto from = g.entry_height.at(alpha);
    for (std::size_t i = from; i < n; ++i) {
      ++rep.checks;
      if (t[i] != g.f.at_prefix(x, i)) rep.violations.push_back({"coherence", alpha, std::nullopt, static_cast<std::uint32_t>(i)});
    }
  }
  return rep;
}

GenericReport check_almost_disjoint(const GenericObjects& g) {
  GenericReport rep;
  const auto n = g.height();
  for (auto a = g.t.begin(); a != g.t.end(); ++a) {
    for (auto b = std::next(a); b != g.t.end(); ++b) {
      const auto& xa = g.x.at(a->first);
      const auto& xb = g.x.at(b->first);
      std::size_t split = 0;
      while (split < n && xa[split] == xb[split]) ++split;
      rep.divergence_levels.push_back({a->first, b->first, static_cast<std::uint32_t>(split)});
      const std::size_t from = std::max<std::size_t>(
          {g.entry_height.at(a->first), g.entry_height.at(b->first), split + 1});
      for (std::size_t i = from; i < n; ++i) {
        ++rep.checks;
        if (a->second[i] == b->second[i]) {
          rep.violations.push_back({"almost-disjoint", a->first, b->first, static_cast<std::uint32_t>(i)});
        }
      }
    }
  }
  return rep;
}

GenericObjects corrupt_coherence(const GenericObjects& g) {
  const auto n = g.height();
  for (const auto& [alpha, h] : g.entry_height) {
    if (h < n && n - 1 >= 1) {
      GenericObjects out = g;
      auto& t = out.t.at(alpha);
      const auto i = n - 1;
      t[i] = (t[i] + 1) % level_size(static_cast<std::uint32_t>(i));
      return out;
    }
  }
  throw PreconditionError("corrupt_coherence: no label has a checked level");
}

GenericObjects forge_collision(const GenericObjects& g) {
  const auto n = g.height();
  for (std::size_t i = n; i-- > 0;) {
    std::map<std::uint64_t, std::vector<Label>> users;
    for (const auto& [label, x] : g.x) users[x.prefix_rank(i)].push_back(label);
    std::vector<Label> alone;
    for (const auto& [node, ls] : users) {
      if (ls.size() == 1 && g.entry_height.at(ls.front()) <= i) alone.push_back(ls.front());
    }
    if (alone.size() < 2) continue;
    std::sort(alone.begin(), alone.end());
    const Label alpha = alone[0];
    const Label beta = alone[1];
    std::vector<std::vector<std::uint64_t>> levels;
    for (std::size_t k = 0; k < n; ++k) levels.emplace_back(g.f.level(k).begin(), g.f.level(k).end());
    const auto v = levels[i][g.x.at(alpha).prefix_rank(i)];
    levels[i][g.x.at(beta).prefix_rank(i)] = v;
    GenericObjects out = g;
    out.f = LevelMap(std::move(levels));
    out.t.at(beta)[i] = v;
    return out;
  }
  throw PreconditionError("forge_collision: no level has two branches on their own nodes");
}

}  // namespace forcelab
