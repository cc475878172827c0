#ifndef PATROL_RNG_HPP
#define PATROL_RNG_HPP

#include <cstdint>

namespace patrol {

// SplitMix64 (Steele, Lea, Flood), used everywhere randomness is needed.
// Substreams are derived from the *original* seed, not the evolving state,
// so the stream layout is reproducible regardless of how many draws a
// parent made: child(i) is seeded with mix64(seed + (i+1) * GAMMA).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64();

  // Uniform in [0, bound); unbiased via rejection. bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound);

  // Uniform in [0,1) with 53 random mantissa bits.
  double next_double();

  bool next_bit() { return (next_u64() >> 63) != 0; }

  SplitMix64 child(std::uint64_t stream) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace patrol

#endif
