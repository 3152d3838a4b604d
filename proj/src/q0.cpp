#include "forcelab/q0.hpp"

#include <limits>
#include <stdexcept>
#include <tuple>

#include "forcelab/errors.hpp"
#include "saturating.hpp"

namespace forcelab {

namespace {

using ValueBuf = boost::container::small_vector<std::uint64_t, 16>;
using SeqRefs = boost::container::small_vector<const TSeq*, 16>;

bool column_distinct(const SeqRefs& seqs, std::size_t from, std::size_t to) {
  if (seqs.size() < 2) return true;
  ValueBuf column;
  for (std::size_t i = from; i < to; ++i) {
    column.clear();
    for (const TSeq* t : seqs) column.push_back((*t)[i]);
    if (!detail::all_distinct(column)) return false;
  }
  return true;
}

std::uint64_t smallest_unused(ValueBuf used) {
  std::sort(used.begin(), used.end());
  std::uint64_t v = 0;
  for (auto u : used) {
    if (u == v) {
      ++v;
    } else if (u > v) {
      break;
    }
  }
  return v;
}

std::uint64_t smallest_unused_except(ValueBuf used, std::uint64_t forbidden) {
  used.push_back(forbidden);
  return smallest_unused(std::move(used));
}

bool fits(std::size_t count, std::uint32_t h) {
  return h >= 64 || count <= (std::uint64_t{1} << h);
}

// Labels ascending, each takes the smallest value unused at its level.
void fill_levels_injective(Q0Condition& r, std::uint32_t from, std::uint32_t to) {
  for (std::uint32_t i = from; i < to; ++i) {
    ValueBuf used;
    for (auto& [label, t] : r.entries) {
      const auto v = smallest_unused(used);
      t.push_back(v);
      used.push_back(v);
    }
  }
  r.ht = std::max(r.ht, to);
}

}  // namespace

LabelSet Q0Condition::domain() const {
  LabelSet out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.insert(out.end(), e.first);
  return out;
}

bool operator<(const Q0Condition& a, const Q0Condition& b) {
  return std::tie(a.ht, a.entries) < std::tie(b.ht, b.entries);
}

LabelPermutation::LabelPermutation(LabelMap<Label> forward) : forward_(std::move(forward)) {
  LabelSet image;
  for (const auto& [from, to] : forward_) image.insert(to);
  if (image.size() != forward_.size()) {
    throw PreconditionError("label permutation is not injective");
  }
  for (const auto& [from, to] : forward_) {
    if (!image.contains(from)) {
      throw PreconditionError("label permutation must map its support onto itself");
    }
  }
  // Fixed points carry no information.
  for (auto it = forward_.begin(); it != forward_.end();) {
    it = it->first == it->second ? forward_.erase(it) : std::next(it);
  }
}

LabelPermutation LabelPermutation::transposition(Label a, Label b) {
  LabelMap<Label> m;
  if (a != b) {
    m[a] = b;
    m[b] = a;
  }
  return LabelPermutation(std::move(m));
}

Label LabelPermutation::operator()(Label a) const {
  auto it = forward_.find(a);
  return it == forward_.end() ? a : it->second;
}

LabelPermutation LabelPermutation::inverse() const {
  LabelMap<Label> back;
  for (const auto& [from, to] : forward_) back[to] = from;
  return LabelPermutation(std::move(back));
}

bool LabelPermutation::is_identity() const { return forward_.empty(); }

ValidationResult validate_q0(const Q0Condition& p) {
  ValidationResult res;
  for (const auto& [label, t] : p.entries) {
    if (t.size() != p.ht) {
      res.fail("(b) label " + std::to_string(label) + ": length " + std::to_string(t.size()) +
               " differs from height " + std::to_string(p.ht));
    } else if (!t.is_valid()) {
      res.fail("(b) label " + std::to_string(label) + ": some value lies outside its level alphabet");
    }
  }
  if (!fits(p.entries.size(), p.ht)) {
    res.fail("(a) domain size " + std::to_string(p.entries.size()) + " exceeds 2^" + std::to_string(p.ht));
  }
  if (p.entries.empty() && p.ht != 0) {
    res.fail("(c) empty domain requires height 0");
  }
  if (!p.entries.empty() && p.ht < 2) {
    res.fail("(c) nonempty domain requires height >= 2");
  }
  return res;
}

bool leq_q0(const Q0Condition& p, const Q0Condition& q) {
  if (p.ht > q.ht) return false;
  SeqRefs above;
  for (const auto& [label, t] : p.entries) {
    auto it = q.entries.find(label);
    if (it == q.entries.end() || !t.is_prefix_of(it->second)) return false;
    above.push_back(&it->second);
  }
  return column_distinct(above, p.ht, q.ht);
}

bool compatible(const Q0Condition& p_in, const Q0Condition& q_in) {
  const bool swap = p_in.ht > q_in.ht;
  const Q0Condition& p = swap ? q_in : p_in;
  const Q0Condition& q = swap ? p_in : q_in;
  SeqRefs shared;
  for (const auto& [label, t] : p.entries) {
    auto it = q.entries.find(label);
    if (it == q.entries.end()) continue;
    if (!t.is_prefix_of(it->second)) return false;
    shared.push_back(&it->second);
  }
  return column_distinct(shared, p.ht, q.ht);
}

std::uint32_t completeness_height(const Q0Condition& p, const Q0Condition& q) {
  std::size_t united = p.entries.size();
  for (const auto& e : q.entries) united += p.entries.contains(e.first) ? 0 : 1;
  return std::max({p.ht, q.ht, ceil_log2(std::max<std::size_t>(1, united)),
                   united > 0 ? 2u : 0u});
}

bool oracle_compatible(const Q0Condition& p, const Q0Condition& q, std::uint64_t budget) {
  LabelSet uni = p.domain();
  for (const auto& e : q.entries) uni.insert(e.first);
  if (uni.empty()) {
    const Q0Condition trivial;
    return leq_q0(p, trivial) && leq_q0(q, trivial);
  }
  const auto top = completeness_height(p, q);
  const auto low = std::max({p.ht, q.ht, 2u});
  std::uint64_t searched = 0;
  for (std::uint32_t h = low; h <= top; ++h) {
    // Each value of r must extend whatever p or q already fixes for that label.
    Q0Condition r{h, {}};
    std::vector<std::size_t> fixed;
    for (Label a : uni) {
      auto ip = p.entries.find(a);
      auto iq = q.entries.find(a);
      const TSeq* base = nullptr;
      if (ip != p.entries.end()) base = &ip->second;
      if (iq != q.entries.end() && (!base || iq->second.size() > base->size())) base = &iq->second;
      TSeq start = *base;
      fixed.push_back(start.size());
      start.resize(h);
      r.entries.emplace_hint(r.entries.end(), a, std::move(start));
    }
    std::uint64_t candidates = 1;
    for (std::size_t k = 0; k < fixed.size(); ++k) {
      for (std::uint32_t i = static_cast<std::uint32_t>(fixed[k]); i < h; ++i) {
        candidates = detail::sat_mul(candidates, level_size(i));
      }
    }
    searched = detail::sat_add(searched, candidates);
    if (searched > budget) {
      throw BudgetExceeded("oracle_compatible: search space exceeds budget");
    }
    while (true) {
      if (leq_q0(p, r) && leq_q0(q, r)) return true;
      std::size_t k = r.entries.size();
      bool advanced = false;
      while (k-- > 0) {
        if (next_t_extension(r.entries.nth(k)->second, fixed[k])) {
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
  }
  return false;
}

Q0Condition common_extension(const Q0Condition& p, const Q0Condition& q) {
  if (!compatible(p, q)) throw IncompatibleError("common_extension: conditions are incompatible");
  const bool swap = p.ht > q.ht;
  const Q0Condition& lo = swap ? q : p;
  const Q0Condition& hi = swap ? p : q;
  const auto top = completeness_height(p, q);

  Q0Condition r{top, hi.entries};
  for (const auto& [label, t] : lo.entries) {
    if (!r.entries.contains(label)) r.entries.emplace(label, t);
  }
  if (r.entries.empty()) return Q0Condition{};

  // Levels [ht lo, ht hi): only the lo-only labels are open; dom lo stays injective.
  for (std::uint32_t i = lo.ht; i < hi.ht; ++i) {
    ValueBuf used;
    for (const auto& [label, t] : lo.entries) {
      if (hi.entries.contains(label)) used.push_back(hi.entries.at(label)[i]);
    }
    for (const auto& [label, t] : lo.entries) {
      if (hi.entries.contains(label)) continue;
      auto& mine = r.entries.at(label);
      const auto v = smallest_unused(used);
      mine.push_back(v);
      used.push_back(v);
    }
  }
  // Levels [ht hi, top): every label open; each of dom lo and dom hi stays injective.
  for (std::uint32_t i = hi.ht; i < top; ++i) {
    ValueBuf used_lo;
    ValueBuf used_hi;
    for (auto& [label, t] : r.entries) {
      const bool in_lo = lo.entries.contains(label);
      const bool in_hi = hi.entries.contains(label);
      ValueBuf used;
      if (in_lo) used.insert(used.end(), used_lo.begin(), used_lo.end());
      if (in_hi) used.insert(used.end(), used_hi.begin(), used_hi.end());
      const auto v = smallest_unused(std::move(used));
      t.push_back(v);
      if (in_lo) used_lo.push_back(v);
      if (in_hi) used_hi.push_back(v);
    }
  }
  return r;
}

HeightExtension extend_to_height(const Q0Condition& p, std::uint32_t k) {
  if (p.entries.empty()) return {p, k > p.ht};
  if (k <= p.ht) return {p, false};
  Q0Condition r = p;
  fill_levels_injective(r, p.ht, k);
  return {std::move(r), false};
}

Q0Condition extend_domain(const Q0Condition& p, Label alpha) {
  if (p.contains(alpha)) return p;
  std::uint32_t h = std::max(p.ht, 2u);
  while (!fits(p.entries.size() + 1, h)) ++h;
  Q0Condition r = p.entries.empty() ? Q0Condition{h, {}} : extend_to_height(p, h).condition;
  r.entries.emplace(alpha, TSeq::zeros(h));
  return r;
}

Q0Condition apply_permutation(const LabelPermutation& h, const Q0Condition& p) {
  Q0Condition r{p.ht, {}};
  r.entries.reserve(p.entries.size());
  for (const auto& [label, t] : p.entries) r.entries.emplace(h(label), t);
  return r;
}

Q0Condition separativity_witness(const Q0Condition& p, const Q0Condition& q) {
  if (leq_q0(p, q)) {
    throw PreconditionError("separativity_witness: p <= q already holds");
  }
  if (!compatible(p, q)) return q;

  // p has a label that q lacks: add it with a value that splits from p at level 1.
  for (const auto& [alpha, tp] : p.entries) {
    if (q.contains(alpha)) continue;
    std::uint32_t h = std::max(q.ht + 1, 2u);
    while (!fits(q.entries.size() + 1, h)) ++h;
    Q0Condition r = q.entries.empty() ? Q0Condition{h, {}} : extend_to_height(q, h).condition;
    TSeq t = TSeq::zeros(h);
    t[1] = tp[1] == 0 ? 1 : 0;
    r.entries.emplace(alpha, std::move(t));
    return r;
  }

  // dom p inside dom q, so q must be lower: diverge from p right at height q.
  if (q.ht < p.ht) {
    const Label alpha = p.entries.begin()->first;
    Q0Condition r = q;
    for (std::uint32_t i = q.ht; i < p.ht; ++i) {
      ValueBuf used;
      if (i == q.ht) {
        const auto v = smallest_unused_except({}, p.entries.at(alpha)[i]);
        r.entries.at(alpha).push_back(v);
        used.push_back(v);
      }
      for (auto& [label, t] : r.entries) {
        if (i == q.ht && label == alpha) continue;
        const auto v = smallest_unused(used);
        t.push_back(v);
        used.push_back(v);
      }
    }
    r.ht = p.ht;
    return r;
  }
  throw std::logic_error("separativity_witness: compatible p with dom p in dom q and ht p <= ht q must satisfy p <= q");
}

HomogeneityWitness homogeneity_witnesses(const Q0Condition& p, const Q0Condition& q) {
  if (p == q) return {p, p, LabelPermutation{}};
  Label fresh = 0;
  if (!p.entries.empty()) fresh = std::max(fresh, p.entries.rbegin()->first + 1);
  if (!q.entries.empty()) fresh = std::max(fresh, q.entries.rbegin()->first + 1);
  LabelMap<Label> moves;
  for (const auto& e : q.entries) {
    if (!p.contains(e.first)) continue;
    moves[e.first] = fresh;
    moves[fresh] = e.first;
    ++fresh;
  }
  LabelPermutation h(std::move(moves));
  Q0Condition p_ext = common_extension(p, apply_permutation(h, q));
  Q0Condition q_ext = apply_permutation(h.inverse(), p_ext);
  return {std::move(p_ext), std::move(q_ext), std::move(h)};
}

Q0Condition reduction(const Q0Condition& p_prime, const LabelSet& x) {
  std::vector<Label> outside;
  for (const auto& e : p_prime.entries) {
    if (!x.contains(e.first)) outside.push_back(e.first);
  }
  std::vector<Label> spare;
  for (Label a : x) {
    if (!p_prime.contains(a)) spare.push_back(a);
  }
  if (spare.size() < outside.size()) {
    throw PreconditionError("reduction: X has " + std::to_string(spare.size()) + " spare labels, " +
                            std::to_string(outside.size()) + " needed");
  }
  LabelMap<Label> moves;
  for (std::size_t k = 0; k < outside.size(); ++k) {
    moves[outside[k]] = spare[k];
    moves[spare[k]] = outside[k];
  }
  return apply_permutation(LabelPermutation(std::move(moves)), p_prime);
}

std::uint64_t count_q0(const LabelSet& labels, std::uint32_t max_ht) {
  const std::uint64_t n = labels.size();
  std::uint64_t total = 1;
  for (std::uint32_t h = 2; h <= max_ht && n > 0; ++h) {
    const auto level = t_level_count(h);
    std::uint64_t binom = 1;
    std::uint64_t power = 1;
    for (std::uint64_t k = 1; k <= n; ++k) {
      binom = binom * (n - k + 1) / k;
      power = detail::sat_mul(power, level);
      if (!fits(k, h)) break;
      total = detail::sat_add(total, detail::sat_mul(binom, power));
    }
  }
  return total;
}

std::vector<Q0Condition> enumerate_q0(const LabelSet& labels, std::uint32_t max_ht,
                                      std::uint64_t budget) {
  if (labels.size() > 32 || count_q0(labels, max_ht) > budget) {
    throw BudgetExceeded("enumerate_q0: fragment exceeds budget of " + std::to_string(budget));
  }
  std::vector<Q0Condition> out;
  out.reserve(count_q0(labels, max_ht));
  out.emplace_back();
  const std::vector<Label> sorted(labels.begin(), labels.end());
  for (std::uint32_t h = 2; h <= max_ht && !sorted.empty(); ++h) {
    const auto level = enumerate_t_level(h, budget);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << sorted.size()); ++mask) {
      std::vector<Label> dom;
      for (std::size_t k = 0; k < sorted.size(); ++k) {
        if (mask >> k & 1u) dom.push_back(sorted[k]);
      }
      if (!fits(dom.size(), h)) continue;
      std::vector<std::size_t> idx(dom.size(), 0);
      while (true) {
        Q0Condition p{h, {}};
        for (std::size_t k = 0; k < dom.size(); ++k) {
          p.entries.emplace_hint(p.entries.end(), dom[k], level[idx[k]]);
        }
        out.push_back(std::move(p));
        std::size_t k = dom.size();
        while (k-- > 0) {
          if (++idx[k] < level.size()) break;
          idx[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
      }
    }
  }
  return out;
}

Q0Condition restrict_to(const Q0Condition& p, const LabelSet& labels) {
  Q0Condition r{p.ht, {}};
  for (const auto& [label, t] : p.entries) {
    if (labels.contains(label)) r.entries.emplace_hint(r.entries.end(), label, t);
  }
  if (r.entries.empty()) r.ht = 0;
  return r;
}

Q0Condition truncate(const Q0Condition& p, std::uint32_t h) {
  if (h > p.ht) throw PreconditionError("truncate: target height exceeds the condition's height");
  Q0Condition r{h, {}};
  for (const auto& [label, t] : p.entries) r.entries.emplace_hint(r.entries.end(), label, t.prefix(h));
  return r;
}

}  // namespace forcelab
