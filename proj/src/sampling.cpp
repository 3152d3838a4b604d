#include "forcelab/sampling.hpp"

#include <unordered_set>

#include "forcelab/errors.hpp"

namespace forcelab {

namespace {

// k distinct values below n, by rejection. Callers keep k well below n or n small.
std::vector<std::uint64_t> random_distinct(Rng& rng, std::size_t k, std::uint64_t n) {
  if (k > n) throw PreconditionError("random_distinct: not enough values");
  std::vector<std::uint64_t> out;
  std::unordered_set<std::uint64_t> seen;
  while (out.size() < k) {
    const auto v = draw(rng, n);
    if (seen.insert(v).second) out.push_back(v);
  }
  return out;
}

std::vector<Label> random_subset(Rng& rng, std::span<const Label> labels) {
  std::vector<Label> out;
  for (Label l : labels) {
    if (draw(rng, 2)) out.push_back(l);
  }
  return out;
}

bool fits(std::size_t count, std::size_t h) { return h >= 64 || count <= (std::uint64_t{1} << h); }

}  // namespace

std::vector<std::uint64_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::uint64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(out[i - 1], out[draw(rng, i)]);
  return out;
}

TSeq random_t(Rng& rng, std::size_t n) {
  TSeq t;
  for (std::size_t i = 0; i < n; ++i) t.push_back(draw(rng, level_size(static_cast<std::uint32_t>(i))));
  return t;
}

BSeq random_b(Rng& rng, std::size_t n) {
  BSeq x;
  for (std::size_t i = 0; i < n; ++i) x.push_back(static_cast<std::uint8_t>(draw(rng, 2)));
  return x;
}

LevelMap random_level_map(Rng& rng, std::size_t height) { return random_level_map_extension(rng, LevelMap{}, height); }

LevelMap random_level_map_extension(Rng& rng, const LevelMap& f, std::size_t height) {
  LevelMap out = f;
  while (out.height() < height) out.push_level(random_permutation(rng, level_size(static_cast<std::uint32_t>(out.height()))));
  return out;
}

Q0Condition random_q0(Rng& rng, std::span<const Label> labels, std::uint32_t max_ht) {
  if (max_ht < 2) return {};
  auto dom = random_subset(rng, labels);
  while (!fits(dom.size(), max_ht)) dom.pop_back();
  if (dom.empty()) return {};
  const auto h = static_cast<std::uint32_t>(
      draw_between(rng, std::max<std::uint32_t>(2, ceil_log2(dom.size())), max_ht));
  Q0Condition p{h, {}};
  for (Label l : dom) p.entries.emplace(l, random_t(rng, h));
  return p;
}

Q0Condition random_q0_extension(Rng& rng, const Q0Condition& p, std::span<const Label> labels,
                                std::uint32_t max_ht) {
  const auto top = std::max(max_ht, p.ht);
  if (p.is_trivial()) return random_q0(rng, labels, top);
  std::vector<Label> fresh;
  for (Label l : random_subset(rng, labels)) {
    if (!p.contains(l)) fresh.push_back(l);
  }
  while (!fits(p.entries.size() + fresh.size(), top)) fresh.pop_back();
  const auto lo = std::max<std::uint32_t>(p.ht, ceil_log2(p.entries.size() + fresh.size()));
  const auto h = static_cast<std::uint32_t>(draw_between(rng, lo, top));
  Q0Condition q{h, p.entries};
  for (std::uint32_t i = p.ht; i < h; ++i) {
    // Old labels must stay pairwise distinct above ht p.
    const auto values = random_distinct(rng, q.entries.size(), level_size(i));
    std::size_t k = 0;
    for (auto& [label, t] : q.entries) t.push_back(values[k++]);
  }
  for (Label l : fresh) q.entries.emplace(l, random_t(rng, h));
  return q;
}

StpQPair random_stp_q(Rng& rng, std::span<const Label> labels, std::uint32_t max_ht) {
  StpQPair out;
  out.p = random_q0(rng, labels, max_ht);
  const auto m = static_cast<std::size_t>(draw_between(rng, 0, out.p.ht));
  out.q.f = random_level_map(rng, m);
  std::vector<Label> dom;
  for (const auto& e : out.p.entries) dom.push_back(e.first);
  std::vector<Label> chosen;
  for (Label l : random_subset(rng, dom)) {
    if (!fits(chosen.size() + 1, m)) break;
    const auto& tl = out.p.entries.at(l);
    bool clash = false;
    for (Label c : chosen) {
      const auto& tc = out.p.entries.at(c);
      for (std::size_t i = m; i < out.p.ht && !clash; ++i) clash = tl[i] == tc[i];
    }
    if (!clash) chosen.push_back(l);
  }
  const auto ranks = random_distinct(rng, chosen.size(), level_size(static_cast<std::uint32_t>(m)));
  for (std::size_t k = 0; k < chosen.size(); ++k) out.q.x.emplace(chosen[k], BSeq::from_rank(m, ranks[k]));
  return out;
}

StpPPair random_stp_p(Rng& rng, std::span<const Label> labels, std::uint32_t max_ht) {
  const auto h = static_cast<std::size_t>(draw_between(rng, 0, max_ht));
  StpPPair out{random_level_map(rng, h), {}};
  for (Label l : random_subset(rng, labels)) {
    const auto n = static_cast<std::size_t>(draw_between(rng, 0, h));
    out.entries.emplace(l, P1Entry{random_b(rng, n), random_t(rng, n)});
  }
  return out;
}

DPStarElement random_dp_star(Rng& rng, std::span<const Label> labels, std::uint32_t max_ht) {
  if (max_ht < 2 || labels.empty()) return DPStarElement(DPElement(StpPPair{}));
  auto dom = random_subset(rng, labels);
  while (!fits(dom.size(), max_ht)) dom.pop_back();
  if (dom.empty()) return DPStarElement(DPElement(StpPPair{}));
  const auto h = static_cast<std::size_t>(
      draw_between(rng, std::max<std::uint32_t>(2, ceil_log2(dom.size())), max_ht));
  StpPPair out{random_level_map(rng, h), {}};
  const auto ranks = random_distinct(rng, dom.size(), level_size(static_cast<std::uint32_t>(h)));
  for (std::size_t k = 0; k < dom.size(); ++k) {
    out.entries.emplace(dom[k], P1Entry{BSeq::from_rank(h, ranks[k]), random_t(rng, h)});
  }
  return DPStarElement(DPElement(std::move(out)));
}

DPStarElement random_dp_star_extension(Rng& rng, const DPStarElement& a, std::span<const Label> labels,
                                       std::uint32_t max_ht) {
  const auto top = std::max<std::size_t>(max_ht, a.ht());
  if (a.pair().entries.empty()) {
    if (draw(rng, 4) == 0) return a;
    return random_dp_star(rng, labels, static_cast<std::uint32_t>(top));
  }
  const auto h = static_cast<std::size_t>(draw_between(rng, a.ht(), top));
  StpPPair out{random_level_map_extension(rng, a.pair().f, h), a.pair().entries};
  std::unordered_set<std::uint64_t> used;
  for (auto& [label, e] : out.entries) {
    while (e.x.size() < h) e.x.push_back(static_cast<std::uint8_t>(draw(rng, 2)));
    for (std::size_t i = e.t.size(); i < h; ++i) e.t.push_back(out.f.at_prefix(e.x, i));
    used.insert(e.x.rank());
  }
  for (Label l : random_subset(rng, labels)) {
    if (out.entries.contains(l) || !fits(out.entries.size() + 1, h)) continue;
    std::uint64_t r;
    do r = draw(rng, level_size(static_cast<std::uint32_t>(h)));
    while (used.contains(r));
    used.insert(r);
    out.entries.emplace(l, P1Entry{BSeq::from_rank(h, r), random_t(rng, h)});
  }
  return DPStarElement(DPElement(std::move(out)));
}

}  // namespace forcelab
