#include "forcelab/forcing.hpp"

#include "forcelab/errors.hpp"

namespace forcelab {

namespace {

std::uint64_t smallest_absent(boost::container::small_vector<std::uint64_t, 16> used) {
  std::sort(used.begin(), used.end());
  std::uint64_t v = 0;
  for (auto u : used) {
    if (u == v) ++v;
    else if (u > v) break;
  }
  return v;
}

}  // namespace

AtomicSentence::AtomicSentence(Label alpha, std::uint32_t i, std::uint64_t j)
    : alpha_(alpha), i_(i), j_(j) {
  if (i > kMaxLevel || j >= level_size(i)) {
    throw PreconditionError("atomic sentence t_" + std::to_string(alpha) + "(" + std::to_string(i) +
                            ") = " + std::to_string(j) + ": value outside a_" + std::to_string(i));
  }
}

SigmaSet sigma_set(const Q0Condition& p, std::uint32_t check_ht) {
  SigmaSet out;
  for (const auto& [alpha, t] : p.entries) {
    for (std::uint32_t i = 0; i < p.ht; ++i) out.positives.emplace_back(alpha, i, t[i]);
  }
  for (auto b = p.entries.begin(); b != p.entries.end(); ++b) {
    for (auto g = std::next(b); g != p.entries.end(); ++g) {
      for (std::uint32_t i = p.ht; i < check_ht; ++i) {
        for (std::uint64_t j = 0; j < level_size(i); ++j) {
          out.negated_conjunctions.push_back({b->first, g->first, i, j});
        }
      }
    }
  }
  return out;
}

bool forces_atom(const Q0Condition& q, const AtomicSentence& s) {
  auto it = q.entries.find(s.alpha());
  return it != q.entries.end() && s.level() < q.ht && it->second[s.level()] == s.value();
}

std::optional<Q0Condition> n_witness(const Q0Condition& q, const AtomicSentence& s) {
  if (!forces_atom(q, s)) return std::nullopt;
  const auto h = std::max(s.level() + 1, 2u);
  return truncate(restrict_to(q, LabelSet{s.alpha()}), h);
}

bool forces_neg_conj(const Q0Condition& q, Label beta, Label gamma, std::uint32_t i,
                     std::uint64_t j) {
  if (beta == gamma) throw PreconditionError("forces_neg_conj: labels must differ");
  const AtomicSentence check(beta, i, j);  // validates j < 2^i
  // A label already holding a different value at i refutes its conjunct outright.
  auto decided_otherwise = [&](Label d) {
    auto it = q.entries.find(d);
    return it != q.entries.end() && i < q.ht && it->second[i] != j;
  };
  if (decided_otherwise(beta) || decided_otherwise(gamma)) return true;
  // Above the height, labels of q are kept apart by every extension.
  return q.contains(beta) && q.contains(gamma) && i >= q.ht;
}

bool forces_sigma_set(const Q0Condition& q, const Q0Condition& p, std::uint32_t check_ht) {
  if (check_ht < q.ht) throw PreconditionError("forces_sigma_set: check height below ht q");
  const auto sigma = sigma_set(p, check_ht);
  for (const auto& s : sigma.positives) {
    if (!forces_atom(q, s)) return false;
  }
  for (const auto& n : sigma.negated_conjunctions) {
    if (!forces_neg_conj(q, n.beta, n.gamma, n.i, n.j)) return false;
  }
  return true;
}

std::pair<Q0Condition, Q0Condition> joint_extension(const Q0Condition& p, const Q0Condition& p_prime,
                                                    std::uint32_t k, Label alpha, Label beta) {
  if (!compatible(p, p_prime)) throw IncompatibleError("joint_extension: p and p' are incompatible");
  Q0Condition r = common_extension(p, p_prime);
  r = extend_domain(r, alpha);
  r = extend_domain(r, beta);
  r = extend_to_height(r, k).condition;
  LabelSet left = p.domain();
  left.insert(alpha);
  LabelSet right = p_prime.domain();
  right.insert(beta);
  return {restrict_to(r, left), restrict_to(r, right)};
}

Q0Condition refuter_condition(Label alpha, Label beta) {
  if (alpha == beta) throw PreconditionError("refuter_condition: labels must differ");
  Q0Condition q{2, {}};
  q.entries.emplace(alpha, TSeq{0, 0});
  q.entries.emplace(beta, TSeq{0, 0});
  return q;
}

Q0Condition refuting_common_extension(const Q0Condition& p, const Q0Condition& p_prime,
                                      const Q0Condition& q, Label alpha, Label beta) {
  if (!compatible(p, p_prime)) {
    throw IncompatibleError("refuting_common_extension: p and p' are incompatible");
  }
  if (alpha == beta || q.entries.size() != 2 || !q.contains(alpha) || !q.contains(beta) ||
      !validate_q0(q)) {
    throw PreconditionError("refuting_common_extension: q must be a valid condition with domain {alpha, beta}");
  }
  if (p_prime.contains(alpha) || p.contains(beta)) {
    throw PreconditionError("refuting_common_extension: alpha must lie outside dom p' and beta outside dom p");
  }
  auto [left, right] = joint_extension(p, p_prime, q.ht, alpha, beta);
  const std::uint32_t m = left.ht;

  Q0Condition r{m + 1, left.entries};
  for (const auto& [label, t] : right.entries) r.entries.emplace(label, t);

  // alpha and beta share a value at level m; each side stays injective.
  using Buf = boost::container::small_vector<std::uint64_t, 16>;
  Buf used_left{0};
  Buf used_right{0};
  for (auto& [label, t] : r.entries) {
    if (label == alpha || label == beta) {
      t.push_back(0);
      continue;
    }
    const bool in_left = left.contains(label);
    const bool in_right = right.contains(label);
    Buf used;
    if (in_left) used.insert(used.end(), used_left.begin(), used_left.end());
    if (in_right) used.insert(used.end(), used_right.begin(), used_right.end());
    const auto v = smallest_absent(std::move(used));
    t.push_back(v);
    if (in_left) used_left.push_back(v);
    if (in_right) used_right.push_back(v);
  }
  return r;
}

}  // namespace forcelab
