#include "patrol/golden.hpp"

#include <cmath>
#include <stdexcept>

namespace patrol {

namespace {

std::vector<Rational> prefix_boundaries(const std::vector<Rational>& partition) {
  if (partition.empty()) throw std::invalid_argument("empty partition");
  std::vector<Rational> boundaries;
  boundaries.reserve(partition.size() + 1);
  boundaries.emplace_back(0);
  Rational acc = 0;
  for (const Rational& p : partition) {
    if (p <= 0) throw std::invalid_argument("partition entries must be positive");
    acc += p;
    boundaries.push_back(acc);
  }
  if (acc != 1) throw std::invalid_argument("partition must sum to 1");
  return boundaries;
}

}  // namespace

GoldenState::GoldenState(std::vector<Rational> partition, SplitMix64 rng)
    : boundaries_(prefix_boundaries(partition)),
      window_lo_(Rational(0)),
      window_width_(1),
      rng_(rng) {}

GoldenState GoldenState::with_phase_prefix(std::vector<Rational> partition,
                                           const std::vector<bool>& bits, SplitMix64 rng) {
  GoldenState state(std::move(partition), rng);
  for (bool bit : bits) state.commit_bit(bit);
  return state;
}

void GoldenState::commit_bit(bool bit) {
  window_width_ /= 2;
  ++committed_bits_;
  phase_prefix_.push_back(bit);
  if (bit) {
    window_lo_ += window_width_;
    // The window may cross the 1 boundary after narrowing; renormalize.
    if ((window_lo_ - Rational(1)).sign() >= 0) window_lo_ -= Rational(1);
  }
}

std::size_t GoldenState::locate_or_extend() {
  for (;;) {
    // Largest i with P_i <= window_lo, by binary search in Q(sqrt 5).
    std::size_t lo = 0, hi = boundaries_.size() - 1;
    while (lo + 1 < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if ((window_lo_ - boundaries_[mid]).sign() >= 0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    // Whole window inside [P_lo, P_{lo+1})?
    if ((window_lo_ + window_width_ - boundaries_[lo + 1]).sign() <= 0) return lo;
    commit_bit(rng_.next_bit());
  }
}

std::size_t GoldenState::step() {
  const std::size_t target = locate_or_extend();
  // Advance the dial by phi mod 1 = phi - 1.
  window_lo_ += QuadIrr::inv_phi();
  if ((window_lo_ - Rational(1)).sign() >= 0) window_lo_ -= Rational(1);
  ++time_;
  return target;
}

std::vector<std::size_t> golden_trajectory(GoldenState& state, std::size_t steps) {
  std::vector<std::size_t> out;
  out.reserve(steps);
  for (std::size_t i = 0; i < steps; ++i) out.push_back(state.step());
  return out;
}

std::array<double, 3> SlaterDistribution::probs_double() const {
  return {probs[0].to_double(), probs[1].to_double(), probs[2].to_double()};
}

int slater_k(const Rational& p) {
  if (p <= 0 || p > Rational(1, 2))
    throw std::invalid_argument("slater: frequency must lie in (0, 1/2]");
  const QuadIrr inv = QuadIrr::inv_phi();
  QuadIrr power = inv;  // (1/phi)^{k+1} starting at k = 0
  for (int k = 0;; ++k) {
    power = power * inv;
    if ((power - p).sign() <= 0) return k + 1;
    // power shrinks geometrically, so this terminates for every p > 0.
  }
}

SlaterDistribution slater_distribution(const Rational& p) {
  const int k = slater_k(p);
  const QuadIrr inv = QuadIrr::inv_phi();
  SlaterDistribution dist;
  dist.k = k;
  dist.support = {fib(k + 1), fib(k + 2), fib(k + 3)};
  dist.probs[0] = (QuadIrr(p) - inv.pow(k + 1)) * Rational(dist.support[0]);
  dist.probs[1] = (QuadIrr(p) - inv.pow(k + 2)) * Rational(dist.support[1]);
  dist.probs[2] = (inv.pow(k) - QuadIrr(p)) * Rational(dist.support[2]);

  QuadIrr sum;
  for (const QuadIrr& q : dist.probs) {
    if (q.sign() < 0) throw std::logic_error("slater: negative probability");
    sum += q;
  }
  if (!(sum == QuadIrr(Rational(1)))) throw std::logic_error("slater: probabilities do not sum to 1");
  return dist;
}

SlaterApprox slater_approx(double p) {
  if (p <= 0.0 || p > 0.5) throw std::invalid_argument("slater: frequency must lie in (0, 1/2]");
  const double inv_phi = 2.0 / (1.0 + std::sqrt(5.0));
  int k = 0;
  double power = inv_phi * inv_phi;  // (1/phi)^{k+1} at k = 1
  for (k = 1; power > p; ++k) power *= inv_phi;
  SlaterApprox dist;
  dist.k = k;
  dist.support = {fib(k + 1), fib(k + 2), fib(k + 3)};
  const double pk = std::pow(inv_phi, k);
  dist.probs = {static_cast<double>(dist.support[0]) * (p - pk * inv_phi),
                static_cast<double>(dist.support[1]) * (p - pk * inv_phi * inv_phi),
                static_cast<double>(dist.support[2]) * (pk - p)};
  return dist;
}

Rational golden_quasi_regularity(const Rational& p) {
  const int k = slater_k(p);
  return Rational(fib(k + 3), fib(k + 1));
}

}  // namespace patrol
