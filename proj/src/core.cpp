#include "patrol/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace patrol {

ValueVector ValueVector::checked(std::vector<Rational> values) {
  if (values.empty()) throw std::invalid_argument("value vector is empty");
  Rational sum = 0;
  const Rational half(1, 2);
  for (const Rational& v : values) {
    if (v <= 0) throw std::invalid_argument("target value must be positive, got " + to_string(v));
    if (v > half) throw std::invalid_argument("target value exceeds 1/2: " + to_string(v));
    sum += v;
  }
  if (sum != 1) throw std::invalid_argument("target values must sum to 1, got " + to_string(sum));
  return ValueVector(std::move(values));
}

PeriodicSequence PeriodicSequence::checked(std::size_t num_targets,
                                           std::vector<std::size_t> entries) {
  if (num_targets == 0 || entries.empty())
    throw std::invalid_argument("periodic sequence needs at least one target and one entry");
  std::vector<bool> seen(num_targets, false);
  for (std::size_t t : entries) {
    if (t >= num_targets) throw std::invalid_argument("sequence entry out of range");
    seen[t] = true;
  }
  for (std::size_t i = 0; i < num_targets; ++i) {
    if (!seen[i])
      throw std::invalid_argument("target " + std::to_string(i + 1) + " never visited");
  }
  return PeriodicSequence(num_targets, std::move(entries));
}

Rational PeriodicSequence::frequency(std::size_t target) const {
  long long count = std::count(entries_.begin(), entries_.end(), target);
  return Rational(count, static_cast<long long>(period()));
}

PeriodicSequence PeriodicSequence::rotated(std::size_t shift) const {
  const std::size_t n = period();
  std::vector<std::size_t> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = entries_[(i + shift) % n];
  return PeriodicSequence(num_targets_, std::move(out));
}

GapDistribution GapDistribution::checked(std::vector<long long> support,
                                         std::vector<Rational> probs,
                                         Rational frequency) {
  if (support.empty()) throw std::invalid_argument("gap distribution has empty support");
  if (support.size() != probs.size())
    throw std::invalid_argument("support/probability size mismatch");
  Rational sum = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] <= 0) throw std::invalid_argument("gap must be positive");
    if (i > 0 && support[i] <= support[i - 1])
      throw std::invalid_argument("support must be strictly increasing");
    if (probs[i] < 0) throw std::invalid_argument("negative gap probability");
    sum += probs[i];
  }
  if (sum != 1) throw std::invalid_argument("gap probabilities must sum to 1");
  if (frequency <= 0 || frequency > 1) throw std::invalid_argument("frequency out of range");
  return GapDistribution(std::move(support), std::move(probs), std::move(frequency));
}

std::vector<Rational> GapDistribution::defender_weights() const {
  const Rational absence = expected_absence();
  std::vector<Rational> q(probs_.size());
  for (std::size_t j = 0; j < probs_.size(); ++j) q[j] = probs_[j] * absence / support_[j];
  return q;
}

GapDistribution empirical_gap_distribution(const PeriodicSequence& seq, std::size_t target) {
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < seq.period(); ++i) {
    if (seq.entries()[i] == target) positions.push_back(i);
  }
  if (positions.empty())
    throw std::invalid_argument("target never visited");

  std::map<long long, long long> counts;
  for (std::size_t j = 0; j < positions.size(); ++j) {
    const std::size_t next = (j + 1 < positions.size()) ? positions[j + 1]
                                                        : positions[0] + seq.period();
    counts[static_cast<long long>(next - positions[j])] += 1;
  }

  // A stationary time falls into a gap of length g with probability
  // proportional to g times the gap's per-cycle count.
  const long long period = static_cast<long long>(seq.period());
  std::vector<long long> support;
  std::vector<Rational> probs;
  for (const auto& [gap, count] : counts) {
    support.push_back(gap);
    probs.emplace_back(gap * count, period);
  }
  const Rational freq(static_cast<long long>(positions.size()), period);
  return GapDistribution::checked(std::move(support), std::move(probs), freq);
}

GapDistribution mixture_gap_distribution(
    const std::vector<std::pair<Rational, GapDistribution>>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty mixture");
  Rational weight_sum = 0;
  Rational freq = 0;
  std::map<long long, Rational> merged;
  for (const auto& [w, dist] : parts) {
    if (w < 0) throw std::invalid_argument("negative mixture weight");
    weight_sum += w;
    freq += w * dist.frequency();
    for (std::size_t j = 0; j < dist.support().size(); ++j)
      merged[dist.support()[j]] += w * dist.probs()[j];
  }
  if (weight_sum != 1) throw std::invalid_argument("mixture weights must sum to 1");
  std::vector<long long> support;
  std::vector<Rational> probs;
  for (auto& [gap, p] : merged) {
    if (p == 0) continue;
    support.push_back(gap);
    probs.push_back(p);
  }
  return GapDistribution::checked(std::move(support), std::move(probs), freq);
}

PiecewiseLinearCdf::PiecewiseLinearCdf(std::vector<std::pair<double, double>> points)
    : points_(std::move(points)) {
  if (points_.size() < 2 || points_.front() != std::pair<double, double>(0.0, 0.0))
    throw std::invalid_argument("CDF must start at (0,0)");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].first <= points_[i - 1].first || points_[i].second < points_[i - 1].second)
      throw std::invalid_argument("CDF breakpoints must be increasing");
  }
}

double PiecewiseLinearCdf::operator()(double t) const {
  if (t <= 0) return 0.0;
  if (t >= points_.back().first) return points_.back().second;
  auto it = std::upper_bound(points_.begin(), points_.end(), t,
                             [](double v, const auto& pt) { return v < pt.first; });
  const auto& [t1, f1] = *it;
  const auto& [t0, f0] = *(it - 1);
  return f0 + (f1 - f0) * (t - t0) / (t1 - t0);
}

namespace {

PiecewiseLinearCdf build_cdf(const std::vector<long long>& support,
                             const std::vector<Rational>& probs) {
  // F(x_j) = sum_{l<=j} P_l + x_j * sum_{l>j} P_l / x_l, computed exactly.
  const std::size_t n = support.size();
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n + 1);
  pts.emplace_back(0.0, 0.0);
  Rational below = 0;
  for (std::size_t j = 0; j < n; ++j) {
    below += probs[j];
    Rational tail = 0;
    for (std::size_t l = j + 1; l < n; ++l) tail += probs[l] / support[l];
    const Rational value = below + tail * support[j];
    pts.emplace_back(static_cast<double>(support[j]), to_double(value));
  }
  pts.back().second = 1.0;
  return PiecewiseLinearCdf(std::move(pts));
}

}  // namespace

PiecewiseLinearCdf gap_cdf(const GapDistribution& dist) {
  return build_cdf(dist.support(), dist.probs());
}

PiecewiseLinearCdf gap_cdf(std::span<const long long> support, std::span<const double> probs) {
  if (support.empty() || support.size() != probs.size())
    throw std::invalid_argument("bad support for gap_cdf");
  const std::size_t n = support.size();
  std::vector<std::pair<double, double>> pts;
  pts.reserve(n + 1);
  pts.emplace_back(0.0, 0.0);
  double below = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    below += probs[j];
    double tail = 0.0;
    for (std::size_t l = j + 1; l < n; ++l) tail += probs[l] / static_cast<double>(support[l]);
    pts.emplace_back(static_cast<double>(support[j]),
                     below + tail * static_cast<double>(support[j]));
  }
  pts.back().second = 1.0;
  return PiecewiseLinearCdf(std::move(pts));
}

std::map<long long, long long> trajectory_gaps(const std::vector<std::size_t>& trajectory,
                                               std::size_t target) {
  std::map<long long, long long> gaps;
  long long last = -1;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    if (trajectory[i] != target) continue;
    if (last >= 0) gaps[static_cast<long long>(i) - last] += 1;
    last = static_cast<long long>(i);
  }
  return gaps;
}

}  // namespace patrol
