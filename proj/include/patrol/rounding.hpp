#ifndef PATROL_ROUNDING_HPP
#define PATROL_ROUNDING_HPP

#include <vector>

#include "patrol/core.hpp"
#include "patrol/rng.hpp"

namespace patrol {

// Dyadic bracket [2^-m, 2^{1-m}] with 2^-m <= p < 2^{1-m}.
struct DyadicInterval {
  int m = 0;
  Rational lo;
  Rational hi;

  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool interior(const Rational& v) const { return lo < v && v < hi; }
};

DyadicInterval dyadic_interval(const Rational& p);
std::vector<DyadicInterval> dyadic_intervals(const ValueVector& p);

struct RoundingOutcome {
  std::vector<Rational> q;
  Rational weight;
};

// One pairwise rounding move on two strictly interior coordinates. Moves
// probability mass between them so that their sum is conserved, at least one
// lands on an interval boundary, and each coordinate keeps its expectation.
struct RoundStep {
  Rational down_i;  // branch taken with probability prob_down: (p_i - d_i, p_j + d_i)
  Rational up_j;
  Rational prob_down;
  std::pair<Rational, Rational> down() const;
  std::pair<Rational, Rational> up() const;

  Rational p_i, p_j;
  Rational delta_i, delta_j;
};

RoundStep round_branches(const Rational& p_i, const DyadicInterval& interval_i,
                         const Rational& p_j, const DyadicInterval& interval_j);

std::pair<Rational, Rational> round_step(const Rational& p_i, const DyadicInterval& interval_i,
                                         const Rational& p_j, const DyadicInterval& interval_j,
                                         SplitMix64& rng);

// Randomly rounds p into its dyadic brackets until at most one coordinate is
// strictly interior. Always pairs the two lowest-indexed interior coordinates.
RoundingOutcome round_to_dyadic(const ValueVector& p, SplitMix64& rng);

// Exact support of the rounding mixture (same pairing policy as the sampler).
// Requires n <= 20; throws "use sampling mode" beyond that.
std::vector<RoundingOutcome> enumerate_outcomes(const ValueVector& p);

// Draws `true` with exact probability `threshold` up to a bias below 2^-128.
bool bernoulli_exact(const Rational& threshold, SplitMix64& rng);

}  // namespace patrol

#endif
