#include "patrol/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "patrol/attacker.hpp"
#include "patrol/golden.hpp"

namespace patrol {

namespace {

constexpr double kUtilityTol = 1e-9;

GapRange census_range(const std::map<long long, long long>& gaps) {
  return GapRange{gaps.begin()->first, gaps.rbegin()->first};
}

}  // namespace

QuasiRegularity quasi_regularity(const PeriodicSequence& seq) {
  QuasiRegularity result;
  result.per_target.resize(seq.num_targets());
  for (std::size_t i = 0; i < seq.num_targets(); ++i) {
    const GapDistribution dist = empirical_gap_distribution(seq, i);
    result.per_target[i] = GapRange{dist.min_gap(), dist.max_gap()};
    result.K = std::max(result.K, result.per_target[i].ratio());
  }
  return result;
}

QuasiRegularity trajectory_quasi_regularity(const std::vector<std::size_t>& trajectory,
                                            std::size_t num_targets) {
  QuasiRegularity result;
  result.per_target.resize(num_targets);
  for (std::size_t i = 0; i < num_targets; ++i) {
    const auto gaps = trajectory_gaps(trajectory, i);
    if (gaps.empty()) continue;
    result.per_target[i] = census_range(gaps);
    result.K = std::max(result.K, result.per_target[i].ratio());
  }
  return result;
}

OptimalityCertificate certify_optimal(
    const ValueVector& values,
    const std::vector<std::pair<Rational, PeriodicSequence>>& mixture) {
  Rational weight_sum = 0;
  for (const auto& [w, seq] : mixture) weight_sum += w;
  if (weight_sum != 1) throw std::invalid_argument("mixture weights must sum to 1");

  OptimalityCertificate cert;
  cert.certified = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    TargetCertificate tc;
    tc.target = i;
    const auto add_note = [&tc](const std::string& text) {
      if (!tc.note.empty()) tc.note += "; ";
      tc.note += text;
    };

    std::vector<std::pair<Rational, GapDistribution>> parts;
    parts.reserve(mixture.size());
    for (const auto& [w, seq] : mixture) {
      parts.emplace_back(w, empirical_gap_distribution(seq, i));
    }
    const GapDistribution mixed = mixture_gap_distribution(parts);

    tc.frequency = mixed.frequency();
    tc.frequency_ok = (tc.frequency == values[i]);
    if (!tc.frequency_ok) {
      add_note("mixture frequency " + to_string(tc.frequency) + " != " + to_string(values[i]));
    }

    // Feasibility of m with gaps inside [m/(m+1) E, m E] for E = 1/alpha_i:
    // need m >= g_max/E and, when g_min < E, m <= g_min/(E - g_min). Both
    // sides reduce to the exact test E (g_max - g_min) <= g_max g_min.
    const Rational absence = Rational(1) / values[i];
    tc.min_gap = mixed.min_gap();
    tc.max_gap = mixed.max_gap();
    const Rational g_min(tc.min_gap), g_max(tc.max_gap);
    tc.gap_window_ok =
        (g_min >= absence) || (absence * (g_max - g_min) <= g_max * g_min);
    if (!tc.gap_window_ok) {
      add_note("gaps [" + std::to_string(tc.min_gap) + ", " + std::to_string(tc.max_gap) +
               "] admit no window around E = " + to_string(absence));
    }

    tc.response = best_response(to_double(values[i]), gap_cdf(mixed));
    tc.response.target = i;
    tc.utility_ok = tc.response.utility <= 0.25 + kUtilityTol;
    if (!tc.utility_ok) add_note("best response exceeds 1/4");

    cert.certified = cert.certified && tc.frequency_ok && tc.gap_window_ok && tc.utility_ok;
    cert.targets.push_back(std::move(tc));
  }
  return cert;
}

SlaterCensus slater_crosscheck(const Rational& p, std::size_t steps, SplitMix64 rng) {
  if (steps < 10'000) throw std::invalid_argument("slater_crosscheck: need at least 1e4 steps");
  GoldenState state({p, 1 - p}, rng);
  const std::vector<std::size_t> trajectory = golden_trajectory(state, steps);
  const auto gaps = trajectory_gaps(trajectory, 0);
  if (gaps.empty()) throw std::runtime_error("slater_crosscheck: target never revisited");

  // Size-biased census: a stationary time lands in a gap of length g with
  // probability proportional to g * count(g).
  double total = 0.0;
  for (const auto& [gap, count] : gaps) total += static_cast<double>(gap * count);

  SlaterCensus census;
  for (const auto& [gap, count] : gaps) {
    census.empirical[gap] = static_cast<double>(gap * count) / total;
  }

  const SlaterDistribution closed = slater_distribution(p);
  census.closed_support.assign(closed.support.begin(), closed.support.end());
  const auto closed_probs = closed.probs_double();
  census.closed_probs.assign(closed_probs.begin(), closed_probs.end());

  double tv = 0.0;
  std::map<long long, double> closed_map;
  for (std::size_t j = 0; j < 3; ++j) closed_map[closed.support[j]] = closed_probs[j];
  for (const auto& [gap, prob] : census.empirical) {
    const auto it = closed_map.find(gap);
    const double reference = (it != closed_map.end()) ? it->second : 0.0;
    tv += std::abs(prob - reference);
  }
  for (const auto& [gap, prob] : closed_map) {
    if (!census.empirical.count(gap)) tv += prob;
  }
  census.tv_distance = tv / 2.0;
  return census;
}

std::vector<RatioRow> ratio_table() {
  std::vector<RatioRow> rows;
  rows.push_back({"optimal-dyadic", 1.0});
  rows.push_back({"golden-ratio", golden_ratio_worstcase().ratio});
  rows.push_back({"iid", iid_worstcase_ratio()});
  return rows;
}

double fixed_phase_utility(const PeriodicSequence& seq, const ValueVector& values) {
  double worst = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& entries = seq.entries();
    const auto it = std::find(entries.begin(), entries.end(), i);
    const double first_visit = static_cast<double>(it - entries.begin());
    worst = std::max(worst, to_double(values[i]) * first_visit);
  }
  return worst;
}

}  // namespace patrol
