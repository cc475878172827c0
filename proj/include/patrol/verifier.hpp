#ifndef PATROL_VERIFIER_HPP
#define PATROL_VERIFIER_HPP

#include <map>
#include <string>
#include <vector>

#include "patrol/core.hpp"
#include "patrol/rng.hpp"

namespace patrol {

struct GapRange {
  long long min_gap = 0;
  long long max_gap = 0;
  double ratio() const { return static_cast<double>(max_gap) / static_cast<double>(min_gap); }
};

struct QuasiRegularity {
  double K = 0.0;  // max over targets of (max cyclic gap)/(min cyclic gap)
  std::vector<GapRange> per_target;
};

QuasiRegularity quasi_regularity(const PeriodicSequence& seq);

// Same measure over a finite trajectory window (gaps without wrap-around).
// Targets never seen twice contribute no gap and are skipped.
QuasiRegularity trajectory_quasi_regularity(const std::vector<std::size_t>& trajectory,
                                            std::size_t num_targets);

struct TargetCertificate {
  std::size_t target = 0;
  bool frequency_ok = false;   // mixture frequency equals alpha_i exactly
  bool gap_window_ok = false;  // some m puts all gaps in [m/(m+1) E, m E]
  bool utility_ok = false;     // best response <= 1/4 + 1e-9
  Rational frequency;
  long long min_gap = 0;
  long long max_gap = 0;
  AttackerResponse response;
  std::string note;
};

struct OptimalityCertificate {
  bool certified = false;
  std::vector<TargetCertificate> targets;
};

// Certifies a mixed strategy given as (weight, sequence) pairs with exact
// weights summing to 1: per target, exact mixture frequency, a feasible gap
// window around E = 1/alpha_i, and attacker best response against the exact
// mixture CDF within 1e-9 of the game value 1/4.
OptimalityCertificate certify_optimal(const ValueVector& values,
                                      const std::vector<std::pair<Rational, PeriodicSequence>>& mixture);

// Runs a golden-ratio trajectory with partition {[0,p), [p,1)} and compares
// the size-biased gap census of the first interval against the closed-form
// three-point law. Returns the total-variation distance.
struct SlaterCensus {
  std::map<long long, double> empirical;  // size-biased gap frequencies
  std::vector<long long> closed_support;
  std::vector<double> closed_probs;
  double tv_distance = 0.0;
};

SlaterCensus slater_crosscheck(const Rational& p, std::size_t steps, SplitMix64 rng);

struct RatioRow {
  std::string strategy;
  double ratio = 0.0;
};

// Worst-case attacker-utility ratios (to the optimal 1/4) per strategy.
std::vector<RatioRow> ratio_table();

// Attacker's supremum utility against the deterministic phase-0 sequence:
// sup_t alpha_i * t over t below the first visit to i. Used as a directional
// check that dropping the uniform phase cannot help the defender.
double fixed_phase_utility(const PeriodicSequence& seq, const ValueVector& values);

}  // namespace patrol

#endif
