#include <doctest.h>

#include <cmath>

#include "patrol/rounding.hpp"

using namespace patrol;

namespace {

ValueVector vv(std::initializer_list<Rational> values) {
  return ValueVector::checked(std::vector<Rational>(values));
}

}  // namespace

TEST_CASE("dyadic intervals bracket each probability") {
  auto check = [](const Rational& p, int m, const Rational& lo, const Rational& hi) {
    const auto interval = dyadic_interval(p);
    CHECK(interval.m == m);
    CHECK(interval.lo == lo);
    CHECK(interval.hi == hi);
    CHECK(interval.lo <= p);
    CHECK(p < interval.hi);
  };
  check(Rational(1, 2), 1, Rational(1, 2), Rational(1));
  check(Rational(1, 3), 2, Rational(1, 4), Rational(1, 2));
  check(Rational(1, 6), 3, Rational(1, 8), Rational(1, 4));
  check(Rational(1), 0, Rational(1), Rational(2));
  CHECK_THROWS_AS(dyadic_interval(Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(dyadic_interval(Rational(-1, 4)), std::invalid_argument);
}

TEST_CASE("round step: equal interior points split evenly") {
  const auto interval = dyadic_interval(Rational(3, 8));  // [1/4, 1/2]
  const auto step = round_branches(Rational(3, 8), interval, Rational(3, 8), interval);
  CHECK(step.delta_i == Rational(1, 8));
  CHECK(step.delta_j == Rational(1, 8));
  CHECK(step.prob_down == Rational(1, 2));
  CHECK(step.down() == std::pair<Rational, Rational>(Rational(1, 4), Rational(1, 2)));
  CHECK(step.up() == std::pair<Rational, Rational>(Rational(1, 2), Rational(1, 4)));
}

TEST_CASE("round step: thirds") {
  const auto interval = dyadic_interval(Rational(1, 3));  // [1/4, 1/2]
  const auto step = round_branches(Rational(1, 3), interval, Rational(1, 3), interval);
  CHECK(step.delta_i == Rational(1, 12));
  CHECK(step.delta_j == Rational(1, 12));
  CHECK(step.down() == std::pair<Rational, Rational>(Rational(1, 4), Rational(5, 12)));
  CHECK(step.up() == std::pair<Rational, Rational>(Rational(5, 12), Rational(1, 4)));
  CHECK(step.prob_down == Rational(1, 2));
}

TEST_CASE("round step is unbiased and conserving by construction") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    // Random interior points of random dyadic brackets.
    const int mi = 1 + static_cast<int>(rng.next_below(4));
    const int mj = 1 + static_cast<int>(rng.next_below(4));
    const Rational lo_i(1, BigInt(1) << mi), lo_j(1, BigInt(1) << mj);
    const Rational pi = lo_i + lo_i * Rational(1 + rng.next_below(7), 8);
    const Rational pj = lo_j + lo_j * Rational(1 + rng.next_below(7), 8);
    const DyadicInterval ii{mi, lo_i, lo_i * 2}, ij{mj, lo_j, lo_j * 2};
    const auto step = round_branches(pi, ii, pj, ij);

    const auto [di, dj_same] = step.down();
    const auto [ui, uj] = step.up();
    CHECK(di + dj_same == pi + pj);
    CHECK(ui + uj == pi + pj);
    // At least one branch output on its boundary.
    const bool down_boundary = !ii.interior(di) || !ij.interior(dj_same);
    const bool up_boundary = !ii.interior(ui) || !ij.interior(uj);
    CHECK(down_boundary);
    CHECK(up_boundary);
    CHECK(ii.contains(di));
    CHECK(ii.contains(ui));
    CHECK(ij.contains(dj_same));
    CHECK(ij.contains(uj));
    // Expectation identity, exactly.
    CHECK(step.prob_down * di + (1 - step.prob_down) * ui == pi);
    CHECK(step.prob_down * dj_same + (1 - step.prob_down) * uj == pj);
  }

  const auto interval = dyadic_interval(Rational(1, 2));
  CHECK_THROWS_AS(round_branches(Rational(1, 2), interval, Rational(1, 2), interval),
                  std::invalid_argument);
}

TEST_CASE("round_to_dyadic leaves boundary vectors untouched") {
  SplitMix64 rng(11);
  const auto outcome = round_to_dyadic(vv({Rational(1, 2), Rational(1, 4), Rational(1, 4)}), rng);
  CHECK(outcome.q == std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(1, 4)});
  CHECK(outcome.weight == 1);
}

TEST_CASE("enumerate_outcomes on (1/2, 1/3, 1/6)") {
  const auto outcomes = enumerate_outcomes(vv({Rational(1, 2), Rational(1, 3), Rational(1, 6)}));
  REQUIRE(outcomes.size() == 2);

  Rational total = 0;
  std::vector<Rational> mean(3, Rational(0));
  bool saw_quarter = false, saw_three_eighths = false;
  for (const auto& outcome : outcomes) {
    total += outcome.weight;
    Rational sum = 0;
    int interior = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      sum += outcome.q[i];
      mean[i] += outcome.weight * outcome.q[i];
      if (!is_power_of_two(outcome.q[i])) ++interior;
    }
    CHECK(sum == 1);
    CHECK(interior <= 1);
    if (outcome.q == std::vector<Rational>{Rational(1, 2), Rational(1, 4), Rational(1, 4)}) {
      saw_quarter = true;
      CHECK(outcome.weight == Rational(1, 3));
    }
    if (outcome.q == std::vector<Rational>{Rational(1, 2), Rational(3, 8), Rational(1, 8)}) {
      saw_three_eighths = true;
      CHECK(outcome.weight == Rational(2, 3));
    }
  }
  CHECK(saw_quarter);
  CHECK(saw_three_eighths);
  CHECK(total == 1);
  CHECK(mean[0] == Rational(1, 2));
  CHECK(mean[1] == Rational(1, 3));
  CHECK(mean[2] == Rational(1, 6));
}

TEST_CASE("enumerate_outcomes: boundary-only input is a point mass") {
  const auto outcomes = enumerate_outcomes(vv({Rational(1, 2), Rational(1, 2)}));
  REQUIRE(outcomes.size() == 1);
  CHECK(outcomes[0].weight == 1);
}

TEST_CASE("enumerate_outcomes properties on random vectors") {
  SplitMix64 rng(2718);
  int tested = 0;
  while (tested < 30) {
    // Random composition of a denominator D <= 64 into n parts, each <= D/2.
    const std::size_t n = 2 + rng.next_below(5);
    const long long den = 2 * (1 + static_cast<long long>(rng.next_below(32)));
    std::vector<long long> parts(n, 1);
    long long remaining = den - static_cast<long long>(n);
    if (remaining < 0) continue;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const long long take = static_cast<long long>(rng.next_below(remaining + 1));
      parts[i] += take;
      remaining -= take;
    }
    parts[n - 1] += remaining;
    std::vector<Rational> values;
    for (long long a : parts) {
      if (2 * a > den) ok = false;
      values.emplace_back(a, den);
    }
    if (!ok) continue;
    ++tested;

    const auto p = ValueVector::checked(values);
    const auto intervals = dyadic_intervals(p);
    const auto outcomes = enumerate_outcomes(p);
    Rational total = 0;
    std::vector<Rational> mean(n, Rational(0));
    for (const auto& outcome : outcomes) {
      total += outcome.weight;
      CHECK(outcome.weight > 0);
      Rational sum = 0;
      int interior = 0;
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(intervals[i].contains(outcome.q[i]));
        if (intervals[i].interior(outcome.q[i])) ++interior;
        sum += outcome.q[i];
        mean[i] += outcome.weight * outcome.q[i];
      }
      CHECK(sum == 1);
      CHECK(interior <= 1);
    }
    CHECK(total == 1);
    for (std::size_t i = 0; i < n; ++i) CHECK(mean[i] == p[i]);
  }
}

TEST_CASE("sampled rounding agrees with the exact mixture") {
  const auto p = vv({Rational(1, 2), Rational(1, 3), Rational(1, 6)});
  SplitMix64 rng(99);
  const int draws = 100'000;
  std::vector<double> mean(3, 0.0);
  for (int s = 0; s < draws; ++s) {
    const auto outcome = round_to_dyadic(p, rng);
    for (std::size_t i = 0; i < 3; ++i) mean[i] += to_double(outcome.q[i]);
  }
  for (std::size_t i = 0; i < 3; ++i) {
    mean[i] /= draws;
    // Coordinates stay inside brackets of width <= 1/2, so three standard
    // errors are well below 0.5 * 3 / sqrt(draws).
    const double se_bound = 3.0 * 0.5 / std::sqrt(static_cast<double>(draws));
    CHECK(std::abs(mean[i] - to_double(p[i])) < se_bound);
  }
}
