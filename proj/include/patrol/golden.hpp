#ifndef PATROL_GOLDEN_HPP
#define PATROL_GOLDEN_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "patrol/core.hpp"
#include "patrol/quadirr.hpp"
#include "patrol/rng.hpp"

namespace patrol {

// Stepper for the golden-ratio schedule: at time t the dial sits at
// (lambda + phi*t) mod 1 and the visited target is the index of the partition
// interval [P_i, P_{i+1}) containing it. The random phase lambda is committed
// lazily, bit by bit: the dial is only known to lie in a half-open dyadic
// window, and a window that straddles a boundary is narrowed with fresh
// random bits until the target is determined. All comparisons happen in
// Q(sqrt 5), so a committed decision never changes when more bits arrive.
//
// The partition is any list of positive rationals summing to 1; callers
// enforce game-level value constraints separately. Single-threaded per
// instance.
class GoldenState {
 public:
  GoldenState(std::vector<Rational> partition, SplitMix64 rng);

  // Test hook: start from an already-committed phase prefix (most significant
  // bit first); further bits still come from the rng.
  static GoldenState with_phase_prefix(std::vector<Rational> partition,
                                       const std::vector<bool>& bits, SplitMix64 rng);

  // Returns the target visited at the current time, then advances the dial.
  std::size_t step();

  std::uint64_t time() const { return time_; }
  int phase_bits() const { return committed_bits_; }
  std::size_t num_targets() const { return boundaries_.size() - 1; }
  const std::vector<Rational>& boundaries() const { return boundaries_; }
  // Committed bits of lambda, most significant first.
  const std::vector<bool>& phase_prefix() const { return phase_prefix_; }

 private:
  std::vector<Rational> boundaries_;  // P_0 = 0 < P_1 < ... < P_n = 1
  QuadIrr window_lo_;                 // lower end of the dial window, in [0,1)
  Rational window_width_;             // 2^-committed_bits_
  int committed_bits_ = 0;
  std::vector<bool> phase_prefix_;
  std::uint64_t time_ = 0;
  SplitMix64 rng_;

  std::size_t locate_or_extend();
  void commit_bit(bool bit);
};

std::vector<std::size_t> golden_trajectory(GoldenState& state, std::size_t steps);

// Return-time law of the golden-ratio schedule for one target of frequency p:
// supported on three consecutive Fibonacci numbers with exactly computable
// weights in Q(sqrt 5).
struct SlaterDistribution {
  int k = 0;
  std::array<long long, 3> support{};  // F_{k+1}, F_{k+2}, F_{k+3}
  std::array<QuadIrr, 3> probs{};
  std::array<double, 3> probs_double() const;
};

// Smallest k with (1/phi)^{k+1} <= p, decided exactly. Requires 0 < p <= 1/2.
int slater_k(const Rational& p);

SlaterDistribution slater_distribution(const Rational& p);

// Double-precision variant used for sweeps over real-valued frequencies.
struct SlaterApprox {
  int k = 0;
  std::array<long long, 3> support{};
  std::array<double, 3> probs{};
};
SlaterApprox slater_approx(double p);

// Worst-case gap ratio F_{k+3}/F_{k+1} of the golden schedule at frequency p.
Rational golden_quasi_regularity(const Rational& p);

}  // namespace patrol

#endif
