#ifndef PATROL_DYADIC_HPP
#define PATROL_DYADIC_HPP

#include <optional>
#include <vector>

#include "patrol/core.hpp"
#include "patrol/rng.hpp"
#include "patrol/rounding.hpp"

namespace patrol {

// Probability vector summing to 1 in which every coordinate is a power of 2,
// except at most one "special" coordinate (any value in (0,1] works for the
// scheduling recursion; rounding always delivers one inside a dyadic bracket).
class DyadicVector {
 public:
  static DyadicVector checked(std::vector<Rational> q);
  static DyadicVector from_outcome(const RoundingOutcome& outcome);

  const std::vector<Rational>& q() const { return q_; }
  std::size_t size() const { return q_.size(); }
  const std::optional<std::size_t>& special() const { return special_; }

 private:
  DyadicVector(std::vector<Rational> q, std::optional<std::size_t> special)
      : q_(std::move(q)), special_(special) {}
  std::vector<Rational> q_;
  std::optional<std::size_t> special_;  // the one non-power-of-two coordinate
};

// Indices of a submultiset of `items` (powers of 2) summing exactly to
// `target`, chosen greedily largest-first. Requires max(items) <= target and
// sum(items) >= target.
std::vector<std::size_t> subset_with_sum(const std::vector<Rational>& items,
                                         const Rational& target);

// Regular sequence for an all-powers-of-2 vector: target i recurs with
// constant cyclic gap exactly 1/q_i; the period is max_i 1/q_i.
PeriodicSequence schedule_all_powers(const DyadicVector& q);

// Periodic sequence in which the special target's cyclic gaps all lie in
// {2^m, 2^{m+1}} (m from its dyadic bracket) and every other target is
// perfectly regular with gap 1/q_i. Frequencies are exact per period.
PeriodicSequence schedule_one_nonpower(const DyadicVector& q);

PeriodicSequence schedule_for(const DyadicVector& q);

// The optimal randomized scheduler: round the value vector into its dyadic
// brackets, schedule the rounded vector, then apply a uniform cyclic shift.
class OptimalSampler {
 public:
  explicit OptimalSampler(ValueVector values);

  PeriodicSequence draw(SplitMix64& rng) const;
  RoundingOutcome draw_outcome(SplitMix64& rng) const;

  // The exact rounding mixture with one scheduled sequence per outcome.
  std::vector<std::pair<Rational, PeriodicSequence>> exact_mixture() const;

  const ValueVector& values() const { return values_; }
  const std::vector<DyadicInterval>& intervals() const { return intervals_; }

 private:
  ValueVector values_;
  std::vector<DyadicInterval> intervals_;
};

}  // namespace patrol

#endif
