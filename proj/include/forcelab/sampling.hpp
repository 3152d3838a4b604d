#pragma once

// Seeded random instances. Every draw is rng() % n on a std::mt19937_64, so a seed fixes
// the stream on every platform.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "forcelab/isomorphism.hpp"
#include "forcelab/iteration_p.hpp"
#include "forcelab/iteration_q.hpp"
#include "forcelab/q0.hpp"

namespace forcelab {

using Rng = std::mt19937_64;

/// Uniform in [0, n); n must be positive.
inline std::uint64_t draw(Rng& rng, std::uint64_t n) { return rng() % n; }

/// Uniform in [lo, hi].
inline std::uint64_t draw_between(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + draw(rng, hi - lo + 1);
}

std::vector<std::uint64_t> random_permutation(Rng& rng, std::size_t n);
TSeq random_t(Rng& rng, std::size_t n);
BSeq random_b(Rng& rng, std::size_t n);
LevelMap random_level_map(Rng& rng, std::size_t height);
/// f followed by random bijections up to height.
LevelMap random_level_map_extension(Rng& rng, const LevelMap& f, std::size_t height);

/// A valid Q0 condition over a random subset of labels with ht <= max_ht.
Q0Condition random_q0(Rng& rng, std::span<const Label> labels, std::uint32_t max_ht);
/// A random q >= p with dom q inside dom p plus labels and ht q <= max(max_ht, ht p).
Q0Condition random_q0_extension(Rng& rng, const Q0Condition& p, std::span<const Label> labels,
                                std::uint32_t max_ht);

StpQPair random_stp_q(Rng& rng, std::span<const Label> labels, std::uint32_t max_ht);
StpPPair random_stp_p(Rng& rng, std::span<const Label> labels, std::uint32_t max_ht);

DPStarElement random_dp_star(Rng& rng, std::span<const Label> labels, std::uint32_t max_ht);
/// A random b >= a in DP* with ht b <= max(max_ht, ht a).
DPStarElement random_dp_star_extension(Rng& rng, const DPStarElement& a, std::span<const Label> labels,
                                       std::uint32_t max_ht);

}  // namespace forcelab
