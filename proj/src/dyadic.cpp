#include "patrol/dyadic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace patrol {

DyadicVector DyadicVector::checked(std::vector<Rational> q) {
  if (q.empty()) throw std::invalid_argument("empty dyadic vector");
  Rational sum = 0;
  std::optional<std::size_t> special;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] <= 0 || q[i] > 1) throw std::invalid_argument("dyadic entry out of (0,1]");
    sum += q[i];
    if (!is_power_of_two(q[i])) {
      if (special) throw std::invalid_argument("more than one non-power-of-2 entry");
      special = i;
    }
  }
  if (sum != 1) throw std::invalid_argument("dyadic vector must sum to 1");
  return DyadicVector(std::move(q), special);
}

DyadicVector DyadicVector::from_outcome(const RoundingOutcome& outcome) {
  return checked(outcome.q);
}

std::vector<std::size_t> subset_with_sum(const std::vector<Rational>& items,
                                         const Rational& target) {
  Rational total = 0;
  for (const Rational& v : items) {
    if (!is_power_of_two(v)) throw std::invalid_argument("subset_with_sum: non-dyadic item");
    if (v > target) throw std::invalid_argument("subset_with_sum: item exceeds target");
    total += v;
  }
  if (total < target) throw std::invalid_argument("subset_with_sum: items sum below target");

  // Largest-first greedy. The remaining deficit stays a multiple of every
  // remaining (smaller) power of 2, so it always closes to zero exactly.
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return items[a] > items[b]; });
  std::vector<std::size_t> chosen;
  Rational deficit = target;
  for (std::size_t idx : order) {
    if (deficit == 0) break;
    if (items[idx] <= deficit) {
      chosen.push_back(idx);
      deficit -= items[idx];
    }
  }
  if (deficit != 0) throw std::logic_error("subset_with_sum: greedy failed");
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

namespace {

using Labeled = std::vector<std::pair<std::size_t, Rational>>;  // (target, probability)

// Interleaves: even slots cycle through `evens`, odd slots through `odds`.
std::vector<std::size_t> interleave(const std::vector<std::size_t>& evens,
                                    const std::vector<std::size_t>& odds) {
  const std::size_t period = 2 * std::lcm(evens.size(), odds.size());
  std::vector<std::size_t> out(period);
  for (std::size_t s = 0; s < period; ++s) {
    out[s] = (s % 2 == 0) ? evens[(s / 2) % evens.size()] : odds[(s / 2) % odds.size()];
  }
  return out;
}

std::vector<std::size_t> build_regular(const Labeled& items) {
  if (items.size() == 1) {
    if (items[0].second != 1) throw std::logic_error("regular schedule: lone frequency != 1");
    return {items[0].first};
  }
  std::vector<Rational> probs(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) probs[i] = items[i].second;
  const std::vector<std::size_t> half = subset_with_sum(probs, Rational(1, 2));

  Labeled side_a, side_b;
  std::vector<bool> in_half(items.size(), false);
  for (std::size_t idx : half) in_half[idx] = true;
  for (std::size_t i = 0; i < items.size(); ++i) {
    (in_half[i] ? side_a : side_b).emplace_back(items[i].first, items[i].second * 2);
  }
  return interleave(build_regular(side_a), build_regular(side_b));
}

// Recursion for one arbitrary coordinate among powers of 2:
// keeps every non-special target perfectly regular while the special one
// lands every 2^m or 2^{m+1} steps.
std::vector<std::size_t> build_one_nonpower(std::size_t special_target, const Rational& special_p,
                                            const Labeled& others) {
  if (others.empty()) {
    if (special_p != 1) throw std::logic_error("one_nonpower: lone frequency != 1");
    return {special_target};
  }
  if (special_p <= Rational(1, 2)) {
    // Half the mass of the other targets goes into the odd slots, scheduled
    // regularly; everything else (special included) recurses into the evens.
    std::vector<Rational> probs(others.size());
    for (std::size_t i = 0; i < others.size(); ++i) probs[i] = others[i].second;
    const std::vector<std::size_t> half = subset_with_sum(probs, Rational(1, 2));
    std::vector<bool> in_half(others.size(), false);
    for (std::size_t idx : half) in_half[idx] = true;

    Labeled odd_side, rest;
    for (std::size_t i = 0; i < others.size(); ++i) {
      (in_half[i] ? odd_side : rest).emplace_back(others[i].first, others[i].second * 2);
    }
    const std::vector<std::size_t> evens =
        build_one_nonpower(special_target, special_p * 2, rest);
    return interleave(evens, build_regular(odd_side));
  }
  // special_p > 1/2: the special target takes every odd slot and re-enters
  // the recursion with the leftover mass 2(special_p - 1/2) > 0.
  Labeled doubled;
  doubled.reserve(others.size());
  for (const auto& [target, prob] : others) doubled.emplace_back(target, prob * 2);
  const Rational leftover = (special_p - Rational(1, 2)) * 2;
  return interleave(build_one_nonpower(special_target, leftover, doubled), {special_target});
}

}  // namespace

PeriodicSequence schedule_all_powers(const DyadicVector& q) {
  if (q.special()) throw std::invalid_argument("schedule_all_powers: non-dyadic entry");
  Labeled items;
  items.reserve(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) items.emplace_back(i, q.q()[i]);
  return PeriodicSequence::checked(q.size(), build_regular(items));
}

PeriodicSequence schedule_one_nonpower(const DyadicVector& q) {
  if (!q.special()) return schedule_all_powers(q);
  const std::size_t special = *q.special();
  Labeled others;
  others.reserve(q.size() - 1);
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (i != special) others.emplace_back(i, q.q()[i]);
  }
  return PeriodicSequence::checked(q.size(),
                                   build_one_nonpower(special, q.q()[special], others));
}

PeriodicSequence schedule_for(const DyadicVector& q) { return schedule_one_nonpower(q); }

OptimalSampler::OptimalSampler(ValueVector values)
    : values_(std::move(values)), intervals_(dyadic_intervals(values_)) {}

RoundingOutcome OptimalSampler::draw_outcome(SplitMix64& rng) const {
  return round_to_dyadic(values_, rng);
}

PeriodicSequence OptimalSampler::draw(SplitMix64& rng) const {
  const RoundingOutcome outcome = round_to_dyadic(values_, rng);
  const PeriodicSequence seq = schedule_for(DyadicVector::from_outcome(outcome));
  return seq.rotated(rng.next_below(seq.period()));
}

std::vector<std::pair<Rational, PeriodicSequence>> OptimalSampler::exact_mixture() const {
  std::vector<std::pair<Rational, PeriodicSequence>> mixture;
  for (const RoundingOutcome& outcome : enumerate_outcomes(values_)) {
    mixture.emplace_back(outcome.weight, schedule_for(DyadicVector::from_outcome(outcome)));
  }
  return mixture;
}

}  // namespace patrol
