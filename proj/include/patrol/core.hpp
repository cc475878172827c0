#ifndef PATROL_CORE_HPP
#define PATROL_CORE_HPP

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "patrol/rational.hpp"

namespace patrol {

// Target values alpha_i: all positive, each at most 1/2, summing to exactly 1.
// Targets are 0-indexed throughout the library; file formats use 1-based ids.
class ValueVector {
 public:
  static ValueVector checked(std::vector<Rational> values);

  std::size_t size() const { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Rational>& values() const { return values_; }

 private:
  explicit ValueVector(std::vector<Rational> values) : values_(std::move(values)) {}
  std::vector<Rational> values_;
};

// One period of the defender's deterministic visit sequence.
class PeriodicSequence {
 public:
  // Requires every target in [0, num_targets) to occur at least once.
  static PeriodicSequence checked(std::size_t num_targets, std::vector<std::size_t> entries);

  std::size_t num_targets() const { return num_targets_; }
  std::size_t period() const { return entries_.size(); }
  const std::vector<std::size_t>& entries() const { return entries_; }

  // Frequency of target i: (occurrences of i) / period.
  Rational frequency(std::size_t target) const;

  PeriodicSequence rotated(std::size_t shift) const;

 private:
  PeriodicSequence(std::size_t num_targets, std::vector<std::size_t> entries)
      : num_targets_(num_targets), entries_(std::move(entries)) {}
  std::size_t num_targets_;
  std::vector<std::size_t> entries_;
};

// Discrete distribution of the time between consecutive visits, as seen by an
// attacker at a stationary random time (size-biased relative to the
// defender's per-cycle gap frequencies).
class GapDistribution {
 public:
  static GapDistribution checked(std::vector<long long> support,
                                 std::vector<Rational> probs,
                                 Rational frequency);

  const std::vector<long long>& support() const { return support_; }
  const std::vector<Rational>& probs() const { return probs_; }
  const Rational& frequency() const { return frequency_; }

  // Expected absence E = 1/p; the defender-side mean of the gap length.
  Rational expected_absence() const { return Rational(1) / frequency_; }

  long long min_gap() const { return support_.front(); }
  long long max_gap() const { return support_.back(); }

  // Defender-side gap weights q_j = P(Z=x_j) * E / x_j; they satisfy
  // sum_j q_j x_j = E and sum_j q_j = 1.
  std::vector<Rational> defender_weights() const;

 private:
  GapDistribution(std::vector<long long> support, std::vector<Rational> probs, Rational frequency)
      : support_(std::move(support)), probs_(std::move(probs)), frequency_(std::move(frequency)) {}
  std::vector<long long> support_;
  std::vector<Rational> probs_;
  Rational frequency_;
};

// Cyclic gap multiset of `target` in `seq`, size-biased. Throws if the target
// never occurs.
GapDistribution empirical_gap_distribution(const PeriodicSequence& seq, std::size_t target);

// Convex combination of gap distributions with exact weights (must sum to 1).
GapDistribution mixture_gap_distribution(
    const std::vector<std::pair<Rational, GapDistribution>>& parts);

// The return-time CDF F(t) = E_Z[min(1, t/Z)], piecewise linear with
// breakpoints at the support points, F(0) = 0 and F(x_max) = 1.
class PiecewiseLinearCdf {
 public:
  explicit PiecewiseLinearCdf(std::vector<std::pair<double, double>> points);

  double operator()(double t) const;
  const std::vector<std::pair<double, double>>& points() const { return points_; }
  double x_max() const { return points_.back().first; }

 private:
  std::vector<std::pair<double, double>> points_;
};

PiecewiseLinearCdf gap_cdf(const GapDistribution& dist);
// Same construction for distributions whose weights are not rational
// (e.g. the golden-ratio return-time law).
PiecewiseLinearCdf gap_cdf(std::span<const long long> support, std::span<const double> probs);

struct AttackerResponse {
  std::size_t target = 0;
  double t_star = 0.0;
  double utility = 0.0;
  double ratio_to_quarter = 0.0;
};

// Gaps between consecutive occurrences of `target` inside a finite trajectory
// window (no wrap-around; used for aperiodic samplers).
std::map<long long, long long> trajectory_gaps(const std::vector<std::size_t>& trajectory,
                                               std::size_t target);

}  // namespace patrol

#endif
