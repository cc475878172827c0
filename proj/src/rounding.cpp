#include "patrol/rounding.hpp"

#include <map>
#include <stdexcept>

namespace patrol {

DyadicInterval dyadic_interval(const Rational& p) {
  if (p <= 0 || p > 1) throw std::invalid_argument("probability out of (0,1]: " + to_string(p));
  // Smallest m with 2^-m <= p.
  int m = 0;
  Rational lo = 1;
  while (lo > p) {
    lo /= 2;
    ++m;
  }
  return DyadicInterval{m, lo, lo * 2};
}

std::vector<DyadicInterval> dyadic_intervals(const ValueVector& p) {
  std::vector<DyadicInterval> out;
  out.reserve(p.size());
  for (const Rational& v : p.values()) out.push_back(dyadic_interval(v));
  return out;
}

std::pair<Rational, Rational> RoundStep::down() const {
  return {p_i - delta_i, p_j + delta_i};
}

std::pair<Rational, Rational> RoundStep::up() const {
  return {p_i + delta_j, p_j - delta_j};
}

RoundStep round_branches(const Rational& p_i, const DyadicInterval& interval_i,
                         const Rational& p_j, const DyadicInterval& interval_j) {
  if (!interval_i.interior(p_i) || !interval_j.interior(p_j))
    throw std::invalid_argument("round_step requires strictly interior coordinates");
  const Rational eps_i = p_i - interval_i.lo;
  const Rational eps_j = p_j - interval_j.lo;
  RoundStep step;
  step.p_i = p_i;
  step.p_j = p_j;
  step.delta_i = std::min(eps_i, Rational(interval_j.hi - p_j));
  step.delta_j = std::min(eps_j, Rational(interval_i.hi - p_i));
  step.prob_down = step.delta_j / (step.delta_i + step.delta_j);
  return step;
}

bool bernoulli_exact(const Rational& threshold, SplitMix64& rng) {
  if (threshold <= 0) return false;
  if (threshold >= 1) return true;
  BigInt draw = rng.next_u64();
  draw <<= 64;
  draw += rng.next_u64();
  // draw/2^128 < a/b  <=>  draw * b < a * 2^128
  return draw * denominator(threshold) < (numerator(threshold) << 128);
}

std::pair<Rational, Rational> round_step(const Rational& p_i, const DyadicInterval& interval_i,
                                         const Rational& p_j, const DyadicInterval& interval_j,
                                         SplitMix64& rng) {
  const RoundStep step = round_branches(p_i, interval_i, p_j, interval_j);
  return bernoulli_exact(step.prob_down, rng) ? step.down() : step.up();
}

namespace {

// Index of the first/second interior coordinate, or npos.
std::pair<std::size_t, std::size_t> interior_pair(const std::vector<Rational>& q,
                                                  const std::vector<DyadicInterval>& intervals) {
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t first = npos;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!intervals[i].interior(q[i])) continue;
    if (first == npos) {
      first = i;
    } else {
      return {first, i};
    }
  }
  return {first, npos};
}

}  // namespace

RoundingOutcome round_to_dyadic(const ValueVector& p, SplitMix64& rng) {
  const std::vector<DyadicInterval> intervals = dyadic_intervals(p);
  std::vector<Rational> q = p.values();
  for (;;) {
    const auto [i, j] = interior_pair(q, intervals);
    if (j == static_cast<std::size_t>(-1)) break;
    const auto [qi, qj] = round_step(q[i], intervals[i], q[j], intervals[j], rng);
    q[i] = qi;
    q[j] = qj;
  }
  return RoundingOutcome{std::move(q), Rational(1)};
}

std::vector<RoundingOutcome> enumerate_outcomes(const ValueVector& p) {
  if (p.size() > 20) throw std::invalid_argument("use sampling mode");
  const std::vector<DyadicInterval> intervals = dyadic_intervals(p);

  std::map<std::vector<Rational>, Rational> leaves;
  struct Node {
    std::vector<Rational> q;
    Rational weight;
  };
  std::vector<Node> stack{{p.values(), Rational(1)}};
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    const auto [i, j] = interior_pair(node.q, intervals);
    if (j == static_cast<std::size_t>(-1)) {
      leaves[node.q] += node.weight;
      continue;
    }
    const RoundStep step = round_branches(node.q[i], intervals[i], node.q[j], intervals[j]);
    Node down = node;
    std::tie(down.q[i], down.q[j]) = step.down();
    down.weight = node.weight * step.prob_down;
    Node up = std::move(node);
    std::tie(up.q[i], up.q[j]) = step.up();
    up.weight *= (1 - step.prob_down);
    stack.push_back(std::move(down));
    stack.push_back(std::move(up));
  }

  std::vector<RoundingOutcome> out;
  out.reserve(leaves.size());
  for (auto& [q, w] : leaves) out.push_back(RoundingOutcome{q, w});
  return out;
}

}  // namespace patrol
