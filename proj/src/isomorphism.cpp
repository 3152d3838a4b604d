#include "forcelab/isomorphism.hpp"

#include <map>

#include "forcelab/errors.hpp"

namespace forcelab {

bool is_dp_star(const StpPPair& a) {
  if (!is_dp(a)) return false;
  if (a.entries.empty()) return a.f.height() == 0;
  return a.f.height() >= 2;
}

DPStarElement::DPStarElement(DPElement e) : e_(std::move(e)) {
  if (!is_dp_star(e_.pair())) throw PreconditionError("not an element of DP*");
}

DPStarElement restrict_dp(const DPElement& a) {
  if (is_dp_star(a.pair())) return DPStarElement(a);
  StpPPair out = a.pair();
  if (out.entries.empty()) {
    const auto h = out.f.height();
    P1Entry e{BSeq::zeros(h), TSeq{}};
    for (std::size_t i = 0; i < h; ++i) e.t.push_back(out.f.at_prefix(e.x, i));
    out.entries.emplace(Label{0}, std::move(e));
  }
  DPElement grown(std::move(out));
  if (grown.ht() < 2) grown = extend_dp_to_height(grown, 2);
  return DPStarElement(std::move(grown));
}

DQElement dp_to_dq(const DPStarElement& a) {
  StpQPair out;
  out.p.ht = static_cast<std::uint32_t>(a.ht());
  out.q.f = a.pair().f;
  for (const auto& [label, e] : a.pair().entries) {
    out.p.entries.emplace_hint(out.p.entries.end(), label, e.t);
    out.q.x.emplace_hint(out.q.x.end(), label, e.x);
  }
  return DQElement(std::move(out));
}

DPStarElement dq_to_dp(const DQElement& d) {
  StpPPair out{d.q().f, {}};
  for (const auto& [label, t] : d.p().entries) {
    out.entries.emplace_hint(out.entries.end(), label, P1Entry{d.q().x.at(label), t});
  }
  return DPStarElement(DPElement(std::move(out)));
}

ValuePermutation::ValuePermutation(std::vector<std::vector<std::uint64_t>> levels)
    : levels_(std::move(levels)) {
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    std::vector<std::uint64_t> sorted = levels_[i];
    std::sort(sorted.begin(), sorted.end());
    bool ok = sorted.size() == level_size(static_cast<std::uint32_t>(i));
    for (std::size_t v = 0; ok && v < sorted.size(); ++v) ok = sorted[v] == v;
    if (!ok) throw PreconditionError("ValuePermutation: level " + std::to_string(i) + " is not a permutation of a_i");
  }
}

ValuePermutation ValuePermutation::normalizing(const LevelMap& f) {
  std::vector<std::vector<std::uint64_t>> levels;
  for (std::size_t i = 0; i < f.height(); ++i) {
    const auto level = f.level(i);
    std::vector<std::uint64_t> inv(level.size());
    for (std::size_t r = 0; r < level.size(); ++r) inv[level[r]] = r;
    levels.push_back(std::move(inv));
  }
  return ValuePermutation(std::move(levels));
}

LevelMap ValuePermutation::apply(const LevelMap& f) const {
  std::vector<std::vector<std::uint64_t>> out;
  for (std::size_t i = 0; i < f.height(); ++i) {
    const auto level = f.level(i);
    std::vector<std::uint64_t> mapped(level.size());
    for (std::size_t r = 0; r < level.size(); ++r) mapped[r] = (*this)(i, level[r]);
    out.push_back(std::move(mapped));
  }
  return LevelMap(std::move(out));
}

TSeq ValuePermutation::apply(const TSeq& t) const {
  TSeq out;
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back((*this)(i, t[i]));
  return out;
}

Q0Condition ValuePermutation::apply(const Q0Condition& p) const {
  Q0Condition out{p.ht, p.entries};
  for (auto& [label, t] : out.entries) t = apply(t);
  return out;
}

StpQPair ValuePermutation::apply(const StpQPair& a) const {
  return StpQPair{apply(a.p), Q1Part{apply(a.q.f), a.q.x}};
}

StpPPair ValuePermutation::apply(const StpPPair& a) const {
  StpPPair out{apply(a.f), a.entries};
  for (auto& [label, e] : out.entries) e.t = apply(e.t);
  return out;
}

bool is_canonical(const LevelMap& f) {
  for (std::size_t i = 0; i < f.height(); ++i) {
    const auto level = f.level(i);
    for (std::size_t r = 0; r < level.size(); ++r) {
      if (level[r] != r) return false;
    }
  }
  return true;
}

std::vector<DPStarElement> enumerate_dp_star(const LabelSet& labels, std::uint32_t max_ht,
                                             std::uint64_t budget) {
  std::vector<DPStarElement> out;
  for (auto& e : enumerate_dp(labels, max_ht, budget)) {
    if (is_dp_star(e.pair())) out.emplace_back(std::move(e));
  }
  return out;
}

namespace {

void record(IsoReport& report, IsoFailure failure) {
  // Keep the report readable; the count of failures is what matters past this.
  if (report.failures.size() < 64) report.failures.push_back(std::move(failure));
}

struct Fragment {
  std::vector<DPStarElement> dp;
  std::vector<DQElement> dq;
};

Fragment load(const LabelSet& labels, std::uint32_t max_ht, std::uint64_t budget, IsoReport& report) {
  Fragment fr;
  fr.dp = enumerate_dp_star(labels, max_ht, budget);
  fr.dq.reserve(fr.dp.size());
  for (const auto& a : fr.dp) {
    fr.dq.push_back(dp_to_dq(a));
    if (!(dq_to_dp(fr.dq.back()) == a)) record(report, {"round-trip-p", a.pair(), std::nullopt});
  }
  const auto all_dq = enumerate_dq(labels, max_ht, budget);
  for (const auto& d : all_dq) {
    const auto a = dq_to_dp(d);
    if (!(dp_to_dq(a) == d)) record(report, {"round-trip-q", a.pair(), std::nullopt});
  }
  // dp_to_dq is injective with image in D_Q, so equal sizes make it a bijection.
  if (all_dq.size() != fr.dp.size()) {
    record(report, {"cardinality", StpPPair{}, std::nullopt});
  }
  report.elements = fr.dp.size();
  return fr;
}

void compare(const Fragment& fr, std::size_t i, std::size_t j, IsoReport& report) {
  const bool lp = leq_stp_p(fr.dp[i].element(), fr.dp[j].element());
  const bool lq = leq_stp_q(fr.dq[i], fr.dq[j]);
  ++report.checked_pairs;
  if (lp != lq) record(report, {"order", fr.dp[i].pair(), fr.dp[j].pair(), lp, lq});
}

}  // namespace

void check_iso_pair(const DPStarElement& a, const DPStarElement& b, IsoReport& report) {
  const auto da = dp_to_dq(a);
  const auto db = dp_to_dq(b);
  if (!(dq_to_dp(da) == a)) record(report, {"round-trip-p", a.pair(), std::nullopt});
  if (!(dq_to_dp(db) == b)) record(report, {"round-trip-p", b.pair(), std::nullopt});
  for (int dir = 0; dir < 2; ++dir) {
    const auto& x = dir ? b : a;
    const auto& y = dir ? a : b;
    const bool lp = leq_stp_p(x.element(), y.element());
    const bool lq = leq_stp_q(dir ? db : da, dir ? da : db);
    ++report.checked_pairs;
    if (lp != lq) record(report, {"order", x.pair(), y.pair(), lp, lq});
  }
}

IsoReport check_order_iso(const LabelSet& labels, std::uint32_t max_ht, std::uint64_t budget) {
  IsoReport report;
  const auto fr = load(labels, max_ht, budget, report);
  std::map<LevelMap, std::vector<std::size_t>> buckets;
  for (std::size_t k = 0; k < fr.dp.size(); ++k) buckets[fr.dp[k].pair().f].push_back(k);
  for (const auto& [fa, as] : buckets) {
    if (!is_canonical(fa)) continue;
    for (const auto& [fb, bs] : buckets) {
      if (!fa.is_prefix_of(fb)) continue;
      for (auto i : as) {
        for (auto j : bs) compare(fr, i, j, report);
      }
    }
  }
  return report;
}

IsoReport check_order_iso_full(const LabelSet& labels, std::uint32_t max_ht, std::uint64_t budget) {
  IsoReport report;
  const auto fr = load(labels, max_ht, budget, report);
  for (std::size_t i = 0; i < fr.dp.size(); ++i) {
    for (std::size_t j = 0; j < fr.dp.size(); ++j) compare(fr, i, j, report);
  }
  return report;
}

}  // namespace forcelab
