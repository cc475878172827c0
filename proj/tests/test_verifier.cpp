#include <doctest.h>

#include <cmath>
#include <set>

#include "patrol/dyadic.hpp"
#include "patrol/verifier.hpp"

using namespace patrol;

namespace {

PeriodicSequence seq_of(std::size_t n, std::vector<std::size_t> entries) {
  return PeriodicSequence::checked(n, std::move(entries));
}

}  // namespace

TEST_CASE("quasi-regularity of simple sequences") {
  CHECK(quasi_regularity(seq_of(3, {0, 1, 0, 2})).K == doctest::Approx(1.0));
  const auto qr = quasi_regularity(seq_of(2, {0, 0, 1}));
  CHECK(qr.K == doctest::Approx(2.0));
  CHECK(qr.per_target[0].min_gap == 1);
  CHECK(qr.per_target[0].max_gap == 2);
}

TEST_CASE("certify_optimal: regular two-target sequence") {
  const auto values = ValueVector::checked({Rational(1, 2), Rational(1, 2)});
  const auto cert = certify_optimal(values, {{Rational(1), seq_of(2, {0, 1})}});
  CHECK(cert.certified);
  for (const auto& tc : cert.targets) {
    CHECK(tc.frequency_ok);
    CHECK(tc.gap_window_ok);
    CHECK(tc.response.utility == doctest::Approx(0.25).epsilon(1e-12));
  }
}

TEST_CASE("certify_optimal: the Algorithm-1 mixture on (1/2, 1/3, 1/6)") {
  const auto values = ValueVector::checked({Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  const OptimalSampler sampler(values);
  const auto cert = certify_optimal(values, sampler.exact_mixture());
  CHECK(cert.certified);
  for (const auto& tc : cert.targets) {
    CHECK(tc.frequency_ok);
    CHECK(tc.gap_window_ok);
    CHECK(std::abs(tc.response.utility - 0.25) <= 1e-9);
    CHECK(std::abs(tc.response.ratio_to_quarter - 1.0) <= 4e-9);
  }
}

TEST_CASE("certify_optimal: negative control names the violation") {
  // Frequencies match but target 0's gaps {1,3} admit no window around E=2.
  const auto values = ValueVector::checked({Rational(1, 2), Rational(1, 2)});
  const auto cert = certify_optimal(values, {{Rational(1), seq_of(2, {0, 0, 1, 1})}});
  CHECK_FALSE(cert.certified);
  CHECK_FALSE(cert.targets[0].gap_window_ok);
  CHECK(cert.targets[0].note.find("window") != std::string::npos);
  CHECK(cert.targets[0].min_gap == 1);
  CHECK(cert.targets[0].max_gap == 3);
  // The attacker exploits the irregularity.
  CHECK(cert.targets[0].response.utility > 0.25 + 1e-6);

  CHECK_THROWS_AS(certify_optimal(values, {{Rational(1, 2), seq_of(2, {0, 1})}}),
                  std::invalid_argument);
}

TEST_CASE("slater crosscheck: census approaches the closed form") {
  const auto census = slater_crosscheck(Rational(3, 10), 200'000, SplitMix64(41));
  CHECK(census.tv_distance < 1e-2);
  std::set<long long> observed;
  for (const auto& [gap, weight] : census.empirical) observed.insert(gap);
  CHECK(observed == std::set<long long>{2, 3, 5});

  CHECK_THROWS_AS(slater_crosscheck(Rational(3, 10), 100, SplitMix64(1)),
                  std::invalid_argument);
}

TEST_CASE("slater crosscheck TV shrinks roughly like 1/sqrt(steps)") {
  const double tv4 = slater_crosscheck(Rational(3, 10), 10'000, SplitMix64(53)).tv_distance;
  const double tv5 = slater_crosscheck(Rational(3, 10), 100'000, SplitMix64(53)).tv_distance;
  const double tv6 = slater_crosscheck(Rational(3, 10), 1'000'000, SplitMix64(53)).tv_distance;
  CHECK(tv6 < tv4);
  CHECK(tv4 / tv6 > 2.0);  // sqrt(100) = 10 expected; allow generous noise
  MESSAGE("TV at 1e4/1e5/1e6 steps: ", tv4, " ", tv5, " ", tv6);
}

TEST_CASE("ratio table rows") {
  const auto rows = ratio_table();
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].strategy == "optimal-dyadic");
  CHECK(rows[0].ratio == 1.0);
  CHECK(rows[1].ratio == doctest::Approx(1.005831).epsilon(1e-4));
  CHECK(rows[2].ratio == doctest::Approx(4.0 / std::exp(1.0)).epsilon(1e-3));
}

TEST_CASE("dropping the uniform phase cannot help the defender") {
  const auto seq = seq_of(3, {0, 1, 0, 2});
  const auto values = ValueVector::checked({Rational(1, 2), Rational(1, 4), Rational(1, 4)});
  CHECK(fixed_phase_utility(seq, values) >= 0.25 - 1e-12);
  CHECK(fixed_phase_utility(seq, values) == doctest::Approx(0.75));

  const auto pair_values = ValueVector::checked({Rational(1, 2), Rational(1, 2)});
  CHECK(fixed_phase_utility(seq_of(2, {0, 1}), pair_values) == doctest::Approx(0.5));
}

TEST_CASE("trajectory quasi-regularity skips unseen targets") {
  const std::vector<std::size_t> traj = {0, 1, 0, 1, 0};
  const auto qr = trajectory_quasi_regularity(traj, 3);
  CHECK(qr.K == doctest::Approx(1.0));
  CHECK(qr.per_target[2].min_gap == 0);
}
