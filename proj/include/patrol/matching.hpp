#ifndef PATROL_MATCHING_HPP
#define PATROL_MATCHING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "patrol/core.hpp"
#include "patrol/rng.hpp"

namespace patrol {

// M slots on the circle and per-target visit tokens at random offsets:
// token (i, j) sits at Pos(i,j) = (theta_i + j/A_i) mod 1.
struct SlotInstance {
  std::size_t num_targets = 0;
  long long M = 0;                 // lcm of the value denominators
  std::vector<long long> A;        // A_i = M * alpha_i, sum = M
  std::vector<Rational> theta;     // 64-bit dyadic offsets in [0,1)
  double delta = 0.0;              // (1/M) * sqrt(n ln M / 2)

  Rational position(std::size_t target, long long j) const;
};

SlotInstance build_instance(const ValueVector& values, SplitMix64& rng);

// Bipartite slot/token graph: slot t is adjacent to token (i,j) iff the
// circle distance between t/M and Pos(i,j) is at most delta.
struct BipartiteGraph {
  long long M = 0;
  std::vector<std::size_t> token_target;          // flattened tokens
  std::vector<std::vector<std::int32_t>> slot_adj;  // slot -> token ids
  std::size_t num_tokens() const { return token_target.size(); }
  std::size_t token_degree(std::size_t token) const;
};

// delta_sq_override replaces the instance threshold delta^2 by an exact
// rational (tests use it to force complete or starved graphs).
BipartiteGraph build_graph(const SlotInstance& inst,
                           const std::optional<Rational>& delta_sq_override = std::nullopt);

// Membership test for one edge, decided at high precision on the exact
// rational squared distance (delta^2 is transcendental).
bool edge_exists(const SlotInstance& inst, std::size_t target, long long j, long long slot);

struct MatchingResult {
  bool success = false;
  std::vector<std::int32_t> slot_token;  // slot -> matched token id, -1 if none
  std::size_t matched = 0;
};

// Maximum matching via Hopcroft-Karp; success iff it is perfect.
MatchingResult find_perfect_matching(const BipartiteGraph& graph);

struct MatchingSchedule {
  PeriodicSequence sequence;
  int attempts = 0;
  bool eps_precondition = false;
  double delta = 0.0;
};

// Retries build_instance / matching until a perfect matching appears.
// Throws std::runtime_error mentioning the attempt count if all retries fail.
MatchingSchedule matching_schedule(const ValueVector& values, double eps, SplitMix64& rng,
                                   int max_retries = 16);

// Value-size condition alpha_i <= eps/(4+2eps) * sqrt(2/(n ln M)) for all i,
// under which a success is guaranteed to be (1+eps)-quasi-regular.
bool matching_precondition(const ValueVector& values, double eps);

// When a matching fails, Hall's condition fails on some cyclic interval of
// slots; returns one such witness (start, length) or {-1, -1}.
std::pair<long long, long long> hall_violation_interval(const BipartiteGraph& graph);

}  // namespace patrol

#endif
