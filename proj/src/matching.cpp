#include "patrol/matching.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>

namespace patrol {

namespace {

using Float100 = boost::multiprecision::cpp_bin_float_100;

Float100 delta_squared(const SlotInstance& inst) {
  const Float100 n(static_cast<unsigned>(inst.num_targets));
  const Float100 m(inst.M);
  return n * log(m) / (2 * m * m);
}

// Squared circle distance between two points of [0,1), exact.
Rational circle_dist_sq(const Rational& x, const Rational& y) {
  Rational d = x - y;
  if (d < 0) d = -d;
  const Rational wrap = 1 - d;
  if (wrap < d) d = wrap;
  return d * d;
}

bool within_delta(const Rational& dist_sq, const Float100& delta_sq) {
  return Float100(dist_sq) <= delta_sq;
}

}  // namespace

Rational SlotInstance::position(std::size_t target, long long j) const {
  Rational pos = theta[target] + Rational(j, A[target]);
  if (pos >= 1) pos -= 1;
  return pos;
}

SlotInstance build_instance(const ValueVector& values, SplitMix64& rng) {
  SlotInstance inst;
  inst.num_targets = values.size();
  BigInt m = 1;
  for (const Rational& v : values.values()) m = lcm(m, denominator(v));
  if (m > 1'000'000) throw std::invalid_argument("matching: common denominator too large");
  inst.M = m.convert_to<long long>();

  long long total = 0;
  for (const Rational& v : values.values()) {
    const Rational scaled = v * inst.M;
    inst.A.push_back(numerator(scaled).convert_to<long long>());
    total += inst.A.back();
  }
  if (total != inst.M) throw std::logic_error("matching: token count mismatch");

  for (std::size_t i = 0; i < inst.num_targets; ++i) {
    inst.theta.emplace_back(BigInt(rng.next_u64()), BigInt(1) << 64);
  }
  inst.delta = std::sqrt(static_cast<double>(inst.num_targets) *
                         std::log(static_cast<double>(inst.M)) / 2.0) /
               static_cast<double>(inst.M);
  return inst;
}

bool edge_exists(const SlotInstance& inst, std::size_t target, long long j, long long slot) {
  const Rational slot_pos(slot, inst.M);
  return within_delta(circle_dist_sq(inst.position(target, j), slot_pos), delta_squared(inst));
}

BipartiteGraph build_graph(const SlotInstance& inst,
                           const std::optional<Rational>& delta_sq_override) {
  BipartiteGraph graph;
  graph.M = inst.M;
  graph.slot_adj.assign(static_cast<std::size_t>(inst.M), {});
  const Float100 delta_sq =
      delta_sq_override ? Float100(*delta_sq_override) : delta_squared(inst);
  const double delta = delta_sq_override
                           ? std::sqrt(std::max(0.0, to_double(*delta_sq_override)))
                           : inst.delta;

  std::int32_t token_id = 0;
  for (std::size_t i = 0; i < inst.num_targets; ++i) {
    for (long long j = 0; j < inst.A[i]; ++j, ++token_id) {
      graph.token_target.push_back(i);
      const Rational pos = inst.position(i, j);
      const double pos_d = to_double(pos);
      // Candidate slots within delta of pos, padded one grid step each way;
      // each candidate is then tested exactly.
      const long long lo = static_cast<long long>(
          std::floor((pos_d - delta) * static_cast<double>(inst.M))) - 1;
      const long long hi = static_cast<long long>(
          std::ceil((pos_d + delta) * static_cast<double>(inst.M))) + 1;
      for (long long t = lo; t <= hi; ++t) {
        const long long slot = ((t % inst.M) + inst.M) % inst.M;
        const Rational slot_pos(slot, inst.M);
        if (within_delta(circle_dist_sq(pos, slot_pos), delta_sq)) {
          graph.slot_adj[static_cast<std::size_t>(slot)].push_back(token_id);
        }
      }
    }
  }
  // Wide delta may make candidate windows overlap after wrapping.
  for (auto& adj : graph.slot_adj) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return graph;
}

std::size_t BipartiteGraph::token_degree(std::size_t token) const {
  std::size_t degree = 0;
  for (const auto& adj : slot_adj) {
    degree += static_cast<std::size_t>(
        std::count(adj.begin(), adj.end(), static_cast<std::int32_t>(token)));
  }
  return degree;
}

MatchingResult find_perfect_matching(const BipartiteGraph& graph) {
  const std::size_t num_slots = graph.slot_adj.size();
  const std::size_t num_tokens = graph.num_tokens();
  constexpr std::int32_t kFree = -1;
  constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max();

  std::vector<std::int32_t> slot_match(num_slots, kFree);
  std::vector<std::int32_t> token_match(num_tokens, kFree);
  std::vector<std::int32_t> dist(num_slots, 0);

  const auto bfs = [&]() {
    std::queue<std::size_t> queue;
    bool reachable_free_token = false;
    for (std::size_t s = 0; s < num_slots; ++s) {
      if (slot_match[s] == kFree) {
        dist[s] = 0;
        queue.push(s);
      } else {
        dist[s] = kInf;
      }
    }
    while (!queue.empty()) {
      const std::size_t s = queue.front();
      queue.pop();
      for (std::int32_t token : graph.slot_adj[s]) {
        const std::int32_t next = token_match[token];
        if (next == kFree) {
          reachable_free_token = true;
        } else if (dist[next] == kInf) {
          dist[next] = dist[s] + 1;
          queue.push(static_cast<std::size_t>(next));
        }
      }
    }
    return reachable_free_token;
  };

  const std::function<bool(std::size_t)> dfs = [&](std::size_t s) -> bool {
    for (std::int32_t token : graph.slot_adj[s]) {
      const std::int32_t next = token_match[token];
      if (next == kFree ||
          (dist[next] == dist[s] + 1 && dfs(static_cast<std::size_t>(next)))) {
        slot_match[s] = token;
        token_match[token] = static_cast<std::int32_t>(s);
        return true;
      }
    }
    dist[s] = kInf;
    return false;
  };

  std::size_t matched = 0;
  while (bfs()) {
    for (std::size_t s = 0; s < num_slots; ++s) {
      if (slot_match[s] == kFree && dfs(s)) ++matched;
    }
  }

  MatchingResult result;
  result.matched = matched;
  result.slot_token = std::move(slot_match);
  result.success = (matched == num_slots) && (num_slots == num_tokens);
  return result;
}

bool matching_precondition(const ValueVector& values, double eps) {
  BigInt m = 1;
  for (const Rational& v : values.values()) m = lcm(m, denominator(v));
  const double log_m = std::log(m.convert_to<double>());
  if (log_m <= 0.0) return false;
  const double bound = eps / (4.0 + 2.0 * eps) *
                       std::sqrt(2.0 / (static_cast<double>(values.size()) * log_m));
  for (const Rational& v : values.values()) {
    if (to_double(v) > bound) return false;
  }
  return true;
}

MatchingSchedule matching_schedule(const ValueVector& values, double eps, SplitMix64& rng,
                                   int max_retries) {
  if (max_retries < 1) throw std::invalid_argument("matching: retries must be >= 1");
  for (int attempt = 1; attempt <= max_retries; ++attempt) {
    SplitMix64 attempt_rng = rng.child(static_cast<std::uint64_t>(attempt - 1));
    const SlotInstance inst = build_instance(values, attempt_rng);
    const BipartiteGraph graph = build_graph(inst);
    const MatchingResult matching = find_perfect_matching(graph);
    if (!matching.success) continue;

    std::vector<std::size_t> entries(static_cast<std::size_t>(inst.M));
    for (std::size_t slot = 0; slot < entries.size(); ++slot) {
      entries[slot] = graph.token_target[static_cast<std::size_t>(matching.slot_token[slot])];
    }
    MatchingSchedule out{PeriodicSequence::checked(values.size(), std::move(entries)), attempt,
                         matching_precondition(values, eps), inst.delta};
    return out;
  }
  throw std::runtime_error("matching: no perfect matching after " +
                           std::to_string(max_retries) + " attempts");
}

std::pair<long long, long long> hall_violation_interval(const BipartiteGraph& graph) {
  const long long m = graph.M;
  for (long long length = 1; length <= m; ++length) {
    for (long long start = 0; start < m; ++start) {
      std::set<std::int32_t> neighborhood;
      for (long long off = 0; off < length; ++off) {
        const auto& adj = graph.slot_adj[static_cast<std::size_t>((start + off) % m)];
        neighborhood.insert(adj.begin(), adj.end());
      }
      if (static_cast<long long>(neighborhood.size()) < length) return {start, length};
    }
  }
  return {-1, -1};
}

}  // namespace patrol
