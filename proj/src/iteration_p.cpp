#include "forcelab/iteration_p.hpp"

#include "enum_util.hpp"
#include "forcelab/errors.hpp"

namespace forcelab {

namespace {

bool fits(std::size_t count, std::size_t h) { return h >= 64 || count <= (std::uint64_t{1} << h); }

// Per-label order, clauses (b), (d), (e), given the larger side's f.
bool entry_leq(const P1Entry& a, const P1Entry& b, const LevelMap& fb) {
  if (a.ht() > b.ht()) return false;
  if (!a.x.is_prefix_of(b.x) || !a.t.is_prefix_of(b.t)) return false;
  for (std::size_t i = a.ht(); i < b.ht(); ++i) {
    if (b.t[i] != fb.at_prefix(b.x, i)) return false;
  }
  return true;
}

// Grows an entry to height h along f: zero bits for x, forced values for t.
void grow_entry(P1Entry& e, const LevelMap& f, std::size_t h) {
  while (e.x.size() < h) e.x.push_back(0);
  for (std::size_t i = e.t.size(); i < h; ++i) e.t.push_back(f.at_prefix(e.x, i));
}

void push_identity_levels(LevelMap& f, std::size_t h) {
  while (f.height() < h) {
    std::vector<std::uint64_t> level(level_size(f.height()));
    for (std::size_t r = 0; r < level.size(); ++r) level[r] = r;
    f.push_level(std::move(level));
  }
}

class Budget {
 public:
  Budget(std::uint64_t limit, const char* what) : limit_(limit), what_(what) {}
  void tick() {
    if (++used_ > limit_) throw BudgetExceeded(std::string(what_) + ": search exceeds budget of " + std::to_string(limit_));
  }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  const char* what_;
};

// Calls fn on every extension of f to height h; stops early when fn returns true.
template <class Fn>
bool any_f_extension(const LevelMap& f, std::size_t h, Budget& budget, Fn&& fn) {
  if (f.height() >= h) {
    budget.tick();
    return fn(f);
  }
  std::vector<std::uint64_t> level(level_size(f.height()));
  for (std::size_t r = 0; r < level.size(); ++r) level[r] = r;
  do {
    LevelMap g = f;
    g.push_level(level);
    if (any_f_extension(g, h, budget, fn)) return true;
  } while (std::next_permutation(level.begin(), level.end()));
  return false;
}

// Whether some entry of height in [lo, h] extending base is above both a and b under g.
bool entry_upper_bound_exists(const P1Entry& base, const P1Entry* a, const P1Entry* b,
                              const LevelMap& g, Budget& budget) {
  const std::size_t lo = std::max(a ? a->ht() : 0, b ? b->ht() : 0);
  for (std::size_t n = lo; n <= g.height(); ++n) {
    const std::uint64_t xs = std::uint64_t{1} << (n - base.ht());
    for (std::uint64_t tail = 0; tail < xs; ++tail) {
      P1Entry cand;
      cand.x = base.x;
      const BSeq ext = BSeq::from_rank(n - base.ht(), tail);
      for (std::size_t k = 0; k < ext.size(); ++k) cand.x.push_back(ext[k]);
      cand.t = base.t;
      cand.t.resize(n);
      const std::size_t fixed = base.ht();
      do {
        budget.tick();
        if ((!a || entry_leq(*a, cand, g)) && (!b || entry_leq(*b, cand, g))) return true;
      } while (next_t_extension(cand.t, fixed));
    }
  }
  return false;
}

}  // namespace

bool leq_p0(const P0Condition& f, const P0Condition& g) { return f.is_prefix_of(g); }

ValidationResult validate_stp_p(const StpPPair& a) {
  ValidationResult res;
  if (!a.f.is_valid()) res.fail("P0: f is not a level-wise bijection onto a_i");
  for (const auto& [label, e] : a.entries) {
    const auto name = std::to_string(label);
    if (e.x.size() != e.t.size()) res.fail("P1 (a): x and t of label " + name + " differ in height");
    if (!e.x.is_valid()) res.fail("P1 (a): x of label " + name + " is not a node of B");
    if (!e.t.is_valid()) res.fail("P1 (a): t of label " + name + " is not a node of T");
    if (e.ht() > a.f.height()) res.fail("stp (a): height of label " + name + " exceeds ht f");
  }
  return res;
}

bool is_dp(const StpPPair& a) {
  if (!validate_stp_p(a)) return false;
  std::vector<std::uint64_t> xs;
  for (const auto& [label, e] : a.entries) {
    if (e.ht() != a.f.height()) return false;
    xs.push_back(e.x.rank());
  }
  return detail::all_distinct(xs);
}

DPElement::DPElement(StpPPair pair) : pair_(std::move(pair)) {
  if (!is_dp(pair_)) throw PreconditionError("not an element of D_P");
}

bool leq_stp_p(const StpPPair& a, const StpPPair& b) {
  if (!a.f.is_prefix_of(b.f)) return false;
  for (const auto& [label, ea] : a.entries) {
    auto eb = b.entries.find(label);
    if (eb == b.entries.end() || !entry_leq(ea, eb->second, b.f)) return false;
  }
  return true;
}

DPElement densify_p(const StpPPair& a) {
  if (auto v = validate_stp_p(a); !v) {
    throw PreconditionError("densify_p: invalid input: " + v.violations.front());
  }
  if (is_dp(a)) return DPElement(a);
  std::size_t m = 0;
  for (const auto& e : a.entries) m = std::max(m, e.second.ht());
  const std::size_t n = std::max<std::size_t>(
      a.f.height(), m + ceil_log2(std::max<std::uint64_t>(1, a.entries.size())));
  if (n > kMaxLevel) throw InputTooLarge("densify_p: target height too large");

  StpPPair out{a.f, {}};
  push_identity_levels(out.f, n);
  std::vector<bool> taken(std::size_t{1} << n, false);
  for (const auto& [label, e] : a.entries) {
    const std::uint64_t base = e.x.rank() << (n - e.ht());
    std::uint64_t r = base;
    while (taken[r]) ++r;
    taken[r] = true;
    P1Entry grown{BSeq::from_rank(n, r), e.t};
    grow_entry(grown, out.f, n);
    out.entries.emplace_hint(out.entries.end(), label, std::move(grown));
  }
  return DPElement(std::move(out));
}

DPElement extend_dp_to_height(const DPElement& a, std::size_t h) {
  if (h < a.ht()) throw PreconditionError("extend_dp_to_height: target below current height");
  if (h > kMaxLevel) throw InputTooLarge("extend_dp_to_height: target height too large");
  StpPPair out = a.pair();
  push_identity_levels(out.f, h);
  for (auto& [label, e] : out.entries) grow_entry(e, out.f, h);
  return DPElement(std::move(out));
}

std::pair<P0Condition, P0Condition> two_incompatible_extensions(const P0Condition& f) {
  if (!f.is_valid()) throw PreconditionError("two_incompatible_extensions: invalid f");
  const std::size_t split = std::max<std::size_t>(f.height(), 1);
  if (split >= kMaxLevel) throw InputTooLarge("two_incompatible_extensions: height too large");
  LevelMap base = f;
  push_identity_levels(base, split);
  std::vector<std::uint64_t> level(level_size(split));
  for (std::size_t r = 0; r < level.size(); ++r) level[r] = r;
  LevelMap left = base;
  left.push_level(level);
  std::swap(level[0], level[1]);
  LevelMap right = std::move(base);
  right.push_level(std::move(level));
  return {std::move(left), std::move(right)};
}

std::pair<StpPPair, StpPPair> two_incompatible_extensions(const StpPPair& a) {
  if (auto v = validate_stp_p(a); !v) {
    throw PreconditionError("two_incompatible_extensions: invalid input: " + v.violations.front());
  }
  auto [fl, fr] = two_incompatible_extensions(a.f);
  auto carry = [&](LevelMap f) {
    StpPPair out{std::move(f), a.entries};
    const auto h = out.f.height();
    for (auto& [label, e] : out.entries) {
      if (e.ht() == a.f.height()) grow_entry(e, out.f, h);
    }
    return out;
  };
  return {carry(std::move(fl)), carry(std::move(fr))};
}

bool oracle_p0_compatible(const P0Condition& b, const P0Condition& c, std::size_t max_height,
                          std::uint64_t budget) {
  Budget spent(budget, "oracle_p0_compatible");
  for (std::size_t h = std::max(b.height(), c.height()); h <= max_height; ++h) {
    if (any_f_extension(b, h, spent, [&](const LevelMap& g) { return leq_p0(c, g); })) return true;
  }
  return false;
}

bool oracle_stp_p_compatible(const StpPPair& b, const StpPPair& c, std::size_t max_height,
                             std::uint64_t budget) {
  Budget spent(budget, "oracle_stp_p_compatible");
  LabelSet labels;
  for (const auto& e : b.entries) labels.insert(e.first);
  for (const auto& e : c.entries) labels.insert(e.first);
  for (std::size_t h = std::max(b.f.height(), c.f.height()); h <= max_height; ++h) {
    const bool found = any_f_extension(b.f, h, spent, [&](const LevelMap& g) {
      if (!leq_p0(c.f, g)) return false;
      // The order is a product over labels once g is fixed.
      for (Label label : labels) {
        auto eb = b.entries.find(label);
        auto ec = c.entries.find(label);
        const P1Entry* pb = eb == b.entries.end() ? nullptr : &eb->second;
        const P1Entry* pc = ec == c.entries.end() ? nullptr : &ec->second;
        const P1Entry empty;
        const P1Entry& base = pb ? *pb : (pc ? *pc : empty);
        if (!entry_upper_bound_exists(base, pb, pc, g, spent)) return false;
      }
      return true;
    });
    if (found) return true;
  }
  return false;
}

std::uint64_t count_dp(const LabelSet& labels, std::uint32_t max_ht) {
  std::uint64_t total = 0;
  for (std::uint32_t h = 0; h <= max_ht; ++h) {
    std::uint64_t per_f = 0;
    for (std::uint64_t k = 0; k <= labels.size(); ++k) {
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

std::vector<DPElement> enumerate_dp(const LabelSet& labels, std::uint32_t max_ht, std::uint64_t budget) {
  if (labels.size() > 32 || count_dp(labels, max_ht) > budget) {
    throw BudgetExceeded("enumerate_dp: fragment exceeds budget of " + std::to_string(budget));
  }
  std::vector<DPElement> out;
  const auto subsets = detail::all_subsets(std::vector<Label>(labels.begin(), labels.end()));
  for (std::uint32_t h = 0; h <= max_ht; ++h) {
    const auto maps = enumerate_level_maps(h, budget);
    const auto tlevel = enumerate_t_level(h, budget);
    for (const auto& f : maps) {
      for (const auto& dom : subsets) {
        if (!fits(dom.size(), h)) continue;
        detail::for_each_injection(dom.size(), level_size(h), [&](const std::vector<std::uint64_t>& xs) {
          detail::for_each_tuple(dom.size(), tlevel.size(), [&](const std::vector<std::uint64_t>& ts) {
            StpPPair e{f, {}};
            for (std::size_t k = 0; k < dom.size(); ++k) {
              e.entries.emplace_hint(e.entries.end(), dom[k], P1Entry{BSeq::from_rank(h, xs[k]), tlevel[ts[k]]});
            }
            out.emplace_back(std::move(e));
          });
        });
      }
    }
  }
  return out;
}

std::vector<StpPPair> enumerate_stp_p(const LabelSet& labels, std::uint32_t max_ht, std::uint64_t budget) {
  std::vector<StpPPair> out;
  if (labels.size() > 32) throw BudgetExceeded("enumerate_stp_p: too many labels");
  // Every possible entry of height n, for n up to max_ht.
  std::vector<std::vector<P1Entry>> entries_at;
  for (std::uint32_t n = 0; n <= max_ht; ++n) {
    std::vector<P1Entry> level;
    const auto tlevel = enumerate_t_level(n, budget);
    for (std::uint64_t r = 0; r < level_size(n); ++r) {
      for (const auto& t : tlevel) {
        if (level.size() >= budget) throw BudgetExceeded("enumerate_stp_p: fragment exceeds budget of " + std::to_string(budget));
        level.push_back(P1Entry{BSeq::from_rank(n, r), t});
      }
    }
    entries_at.push_back(std::move(level));
  }
  const auto subsets = detail::all_subsets(std::vector<Label>(labels.begin(), labels.end()));
  for (std::uint32_t h = 0; h <= max_ht; ++h) {
    std::vector<const P1Entry*> options;
    for (std::uint32_t n = 0; n <= h; ++n) {
      for (const auto& e : entries_at[n]) options.push_back(&e);
    }
    for (const auto& f : enumerate_level_maps(h, budget)) {
      for (const auto& dom : subsets) {
        detail::for_each_tuple(dom.size(), options.size(), [&](const std::vector<std::uint64_t>& pick) {
          if (out.size() >= budget) throw BudgetExceeded("enumerate_stp_p: fragment exceeds budget of " + std::to_string(budget));
          StpPPair e{f, {}};
          for (std::size_t k = 0; k < dom.size(); ++k) {
            e.entries.emplace_hint(e.entries.end(), dom[k], *options[pick[k]]);
          }
          out.push_back(std::move(e));
        });
      }
    }
  }
  return out;
}

}  // namespace forcelab
