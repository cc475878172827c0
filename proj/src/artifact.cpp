#include "patrol/artifact.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "patrol/dyadic.hpp"
#include "patrol/golden.hpp"
#include "patrol/matching.hpp"
#include "patrol/attacker.hpp"
#include "patrol/verifier.hpp"

namespace patrol {

namespace {

constexpr const char* kScheduleFormat = "patrol-schedule/1";
constexpr const char* kAnalysisFormat = "patrol-analysis/1";

Strategy parse_strategy(const std::string& name) {
  if (name == "dyadic") return Strategy::dyadic;
  if (name == "golden") return Strategy::golden;
  if (name == "matching") return Strategy::matching;
  if (name == "iid") return Strategy::iid;
  throw InputError("unknown strategy: " + name);
}

// Sequences are stored 1-based in files; the library is 0-based.
Json sequence_to_json(const std::vector<std::size_t>& entries) {
  Json arr = Json::array();
  for (std::size_t t : entries) arr.push_back(t + 1);
  return arr;
}

std::vector<std::size_t> sequence_from_json(const Json& arr, std::size_t num_targets) {
  if (!arr.is_array() || arr.empty()) throw InputError("empty or malformed sequence");
  std::vector<std::size_t> entries;
  entries.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() < 1 ||
        v.get<std::uint64_t>() > num_targets)
      throw InputError("sequence entry out of range");
    entries.push_back(v.get<std::size_t>() - 1);
  }
  return entries;
}

Json gap_stats_json(std::size_t num_targets,
                    const std::vector<std::map<long long, long long>>& censuses) {
  Json stats = Json::array();
  for (std::size_t i = 0; i < num_targets; ++i) {
    const auto& gaps = censuses[i];
    Json entry;
    entry["target"] = i + 1;
    Json hist = Json::object();
    long long visits = 0;
    for (const auto& [gap, count] : gaps) {
      hist[std::to_string(gap)] = count;
      visits += count;
    }
    entry["gaps"] = hist;
    if (!gaps.empty()) {
      entry["min_gap"] = gaps.begin()->first;
      entry["max_gap"] = gaps.rbegin()->first;
    }
    stats.push_back(entry);
  }
  return stats;
}

std::vector<std::map<long long, long long>> cyclic_censuses(const PeriodicSequence& seq) {
  std::vector<std::map<long long, long long>> out(seq.num_targets());
  for (std::size_t i = 0; i < seq.num_targets(); ++i) {
    const GapDistribution dist = empirical_gap_distribution(seq, i);
    // Recover integer counts: count = prob * period / gap.
    for (std::size_t j = 0; j < dist.support().size(); ++j) {
      const Rational count = dist.probs()[j] * static_cast<long long>(seq.period()) /
                             dist.support()[j];
      out[i][dist.support()[j]] = numerator(count).convert_to<long long>();
    }
  }
  return out;
}

std::vector<std::map<long long, long long>> window_censuses(
    const std::vector<std::size_t>& trajectory, std::size_t num_targets) {
  std::vector<std::map<long long, long long>> out(num_targets);
  for (std::size_t i = 0; i < num_targets; ++i) out[i] = trajectory_gaps(trajectory, i);
  return out;
}

Json generate_dyadic(const Config& config) {
  const ValueVector values = config.exact_values();
  const OptimalSampler sampler(values);
  SplitMix64 rng(config.seed);

  SplitMix64 draw_rng = rng.child(0);
  const PeriodicSequence sample = sampler.draw(draw_rng);

  Json doc;
  doc["format"] = kScheduleFormat;
  doc["strategy"] = "dyadic";
  doc["values"] = config.value_text;
  doc["seed"] = config.seed;
  doc["num_targets"] = values.size();
  doc["period"] = sample.period();
  doc["sequence"] = sequence_to_json(sample.entries());
  doc["gap_stats"] = gap_stats_json(values.size(), cyclic_censuses(sample));
  doc["K"] = quasi_regularity(sample).K;

  if (config.exact_mixture) {
    Json mixture = Json::array();
    for (const auto& [weight, seq] : sampler.exact_mixture()) {
      Json entry;
      entry["weight"] = to_string(weight);
      Json q = Json::array();
      for (std::size_t i = 0; i < values.size(); ++i) q.push_back(to_string(seq.frequency(i)));
      entry["q"] = q;
      entry["period"] = seq.period();
      entry["sequence"] = sequence_to_json(seq.entries());
      mixture.push_back(entry);
    }
    doc["mixture"] = mixture;
  } else {
    Json samples = Json::array();
    for (std::size_t s = 0; s < config.samples; ++s) {
      SplitMix64 sample_rng = rng.child(s + 1);
      const PeriodicSequence draw = sampler.draw(sample_rng);
      Json entry;
      entry["period"] = draw.period();
      entry["sequence"] = sequence_to_json(draw.entries());
      samples.push_back(entry);
    }
    doc["samples"] = samples;
  }
  return doc;
}

Json generate_golden(const Config& config) {
  const ValueVector values = config.exact_values();
  if (config.steps == 0) throw InputError("golden: steps must be positive");
  GoldenState state(values.values(), SplitMix64(config.seed).child(0));
  const std::vector<std::size_t> trajectory = golden_trajectory(state, config.steps);

  Json doc;
  doc["format"] = kScheduleFormat;
  doc["strategy"] = "golden";
  doc["values"] = config.value_text;
  doc["seed"] = config.seed;
  doc["num_targets"] = values.size();
  doc["steps"] = config.steps;
  Json boundaries = Json::array();
  for (const Rational& b : state.boundaries()) boundaries.push_back(to_string(b));
  doc["boundaries"] = boundaries;
  doc["phase_bits"] = state.phase_bits();
  doc["sequence"] = sequence_to_json(trajectory);
  doc["gap_stats"] = gap_stats_json(values.size(), window_censuses(trajectory, values.size()));
  doc["K"] = trajectory_quasi_regularity(trajectory, values.size()).K;
  return doc;
}

Json generate_matching(const Config& config) {
  const ValueVector values = config.exact_values();
  SplitMix64 rng(config.seed);
  const MatchingSchedule schedule =
      matching_schedule(values, config.epsilon, rng, config.max_retries);

  Json doc;
  doc["format"] = kScheduleFormat;
  doc["strategy"] = "matching";
  doc["values"] = config.value_text;
  doc["seed"] = config.seed;
  doc["num_targets"] = values.size();
  doc["period"] = schedule.sequence.period();
  doc["epsilon"] = config.epsilon;
  doc["attempts"] = schedule.attempts;
  doc["delta"] = schedule.delta;
  doc["eps_precondition"] = schedule.eps_precondition;
  doc["sequence"] = sequence_to_json(schedule.sequence.entries());
  doc["gap_stats"] = gap_stats_json(values.size(), cyclic_censuses(schedule.sequence));
  doc["K"] = quasi_regularity(schedule.sequence).K;
  return doc;
}

Json generate_iid(const Config& config) {
  const std::vector<double> probs = config.float_values();
  if (config.steps == 0) throw InputError("iid: steps must be positive");
  SplitMix64 rng = SplitMix64(config.seed).child(0);

  std::vector<std::size_t> trajectory(config.steps);
  for (std::size_t t = 0; t < config.steps; ++t) {
    const double u = rng.next_double();
    double acc = 0.0;
    std::size_t chosen = probs.size() - 1;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      acc += probs[i];
      if (u < acc) {
        chosen = i;
        break;
      }
    }
    trajectory[t] = chosen;
  }

  Json doc;
  doc["format"] = kScheduleFormat;
  doc["strategy"] = "iid";
  doc["values"] = config.value_text;
  doc["seed"] = config.seed;
  doc["num_targets"] = probs.size();
  doc["steps"] = config.steps;
  doc["sequence"] = sequence_to_json(trajectory);
  doc["gap_stats"] = gap_stats_json(probs.size(), window_censuses(trajectory, probs.size()));
  doc["K"] = trajectory_quasi_regularity(trajectory, probs.size()).K;
  return doc;
}

// Size-biased gap probabilities from integer gap counts.
std::vector<std::pair<long long, double>> size_biased(const std::map<long long, long long>& gaps) {
  double total = 0.0;
  for (const auto& [gap, count] : gaps) total += static_cast<double>(gap * count);
  std::vector<std::pair<long long, double>> out;
  for (const auto& [gap, count] : gaps) {
    out.emplace_back(gap, static_cast<double>(gap * count) / total);
  }
  return out;
}

double double_value_of(const Json& values, std::size_t i) {
  const auto& v = values.at(i);
  if (!v.is_string()) return v.get<double>();
  const std::string text = v.get<std::string>();
  try {
    return to_double(parse_rational(text));
  } catch (const std::invalid_argument&) {
    try {
      std::size_t used = 0;
      const double parsed = std::stod(text, &used);
      if (used != text.size()) throw InputError("bad value: " + text);
      return parsed;
    } catch (const InputError&) {
      throw;
    } catch (...) {
      throw InputError("bad value: " + text);
    }
  }
}

}  // namespace

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::dyadic: return "dyadic";
    case Strategy::golden: return "golden";
    case Strategy::matching: return "matching";
    case Strategy::iid: return "iid";
  }
  throw std::logic_error("unreachable");
}

ValueVector Config::exact_values() const {
  std::vector<Rational> parsed;
  parsed.reserve(value_text.size());
  for (const std::string& text : value_text) {
    try {
      parsed.push_back(parse_rational(text));
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("bad value: ") + e.what());
    }
  }
  try {
    return ValueVector::checked(std::move(parsed));
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid value vector: ") + e.what());
  }
}

std::vector<double> Config::float_values() const {
  std::vector<double> out;
  out.reserve(value_text.size());
  double sum = 0.0;
  for (const std::string& text : value_text) {
    double v = 0.0;
    try {
      v = to_double(parse_rational(text));
    } catch (const std::invalid_argument&) {
      try {
        std::size_t used = 0;
        v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
      } catch (...) {
        throw InputError("bad value: " + text);
      }
    }
    if (v <= 0.0 || v > 0.5) throw InputError("target value out of (0, 1/2]: " + text);
    sum += v;
    out.push_back(v);
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InputError("target values must sum to 1");
  return out;
}

Config parse_config(const Json& j) {
  if (!j.is_object()) throw InputError("config must be a JSON object");
  Config config;
  if (!j.contains("strategy") || !j.at("strategy").is_string())
    throw InputError("config needs a 'strategy' string");
  config.strategy = parse_strategy(j.at("strategy").get<std::string>());

  if (!j.contains("values") || !j.at("values").is_array() || j.at("values").empty())
    throw InputError("config needs a non-empty 'values' array");
  for (const auto& v : j.at("values")) {
    if (v.is_string()) {
      config.value_text.push_back(v.get<std::string>());
    } else if (v.is_number() && config.strategy == Strategy::iid) {
      std::ostringstream os;
      os << std::setprecision(17) << v.get<double>();
      config.value_text.push_back(os.str());
    } else {
      throw InputError("values must be rational strings (floats allowed only for iid)");
    }
  }

  const auto get_nonneg = [](const Json& v, const char* what) -> std::uint64_t {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<long long>() >= 0)
      return static_cast<std::uint64_t>(v.get<long long>());
    throw InputError(std::string(what) + " must be a non-negative integer");
  };
  if (j.contains("seed")) config.seed = get_nonneg(j.at("seed"), "seed");
  if (j.contains("steps")) {
    config.steps = static_cast<std::size_t>(get_nonneg(j.at("steps"), "steps"));
  }
  if (j.contains("epsilon")) {
    config.epsilon = j.at("epsilon").get<double>();
    if (!(config.epsilon > 0.0)) throw InputError("epsilon must be positive");
  }
  if (j.contains("max_retries")) {
    config.max_retries = j.at("max_retries").get<int>();
    if (config.max_retries < 1) throw InputError("max_retries must be >= 1");
  }
  if (j.contains("mixture_mode")) {
    const std::string mode = j.at("mixture_mode").get<std::string>();
    if (mode == "exact") {
      config.exact_mixture = true;
    } else if (mode == "sampled") {
      config.exact_mixture = false;
    } else {
      throw InputError("mixture_mode must be 'exact' or 'sampled'");
    }
  }
  if (j.contains("samples")) {
    config.samples = static_cast<std::size_t>(get_nonneg(j.at("samples"), "samples"));
    if (config.samples == 0) throw InputError("samples must be a positive integer");
  }
  return config;
}

Config load_config(const std::string& path) {
  return parse_config(read_json_file(path));
}

Json generate_artifact(const Config& config) {
  switch (config.strategy) {
    case Strategy::dyadic: return generate_dyadic(config);
    case Strategy::golden: return generate_golden(config);
    case Strategy::matching: return generate_matching(config);
    case Strategy::iid: return generate_iid(config);
  }
  throw std::logic_error("unreachable");
}

Analysis analyze_artifact(const Json& artifact) {
  if (!artifact.is_object() || artifact.value("format", "") != kScheduleFormat)
    throw InputError("not a schedule artifact");
  const std::string strategy = artifact.value("strategy", "");
  if (strategy.empty()) throw InputError("artifact missing strategy");
  if (!artifact.contains("num_targets") || !artifact.at("num_targets").is_number_unsigned())
    throw InputError("artifact missing num_targets");
  const std::size_t num_targets = artifact.at("num_targets").get<std::size_t>();
  if (num_targets == 0) throw InputError("artifact has no targets");
  if (!artifact.contains("values") || artifact.at("values").size() != num_targets)
    throw InputError("artifact values do not match num_targets");
  if (!artifact.contains("sequence")) throw InputError("artifact missing sequence");

  const std::vector<std::size_t> entries =
      sequence_from_json(artifact.at("sequence"), num_targets);

  // Periodic strategies use the cyclic census; trajectories use the window census.
  const bool periodic = (strategy == "dyadic" || strategy == "matching");
  std::vector<std::map<long long, long long>> censuses;
  double overall_k = 0.0;
  if (periodic) {
    const PeriodicSequence seq = PeriodicSequence::checked(num_targets, entries);
    censuses = cyclic_censuses(seq);
    overall_k = quasi_regularity(seq).K;
  } else {
    censuses = window_censuses(entries, num_targets);
    overall_k = trajectory_quasi_regularity(entries, num_targets).K;
  }

  // Exact mixture, when present, drives the per-target best responses.
  std::optional<OptimalityCertificate> certificate;
  if (strategy == "dyadic" && artifact.contains("mixture")) {
    std::vector<Rational> parsed;
    for (const auto& text : artifact.at("values")) {
      parsed.push_back(parse_rational(text.get<std::string>()));
    }
    const ValueVector values = ValueVector::checked(std::move(parsed));
    std::vector<std::pair<Rational, PeriodicSequence>> mixture;
    for (const auto& entry : artifact.at("mixture")) {
      mixture.emplace_back(
          parse_rational(entry.at("weight").get<std::string>()),
          PeriodicSequence::checked(num_targets,
                                    sequence_from_json(entry.at("sequence"), num_targets)));
    }
    certificate = certify_optimal(values, mixture);
  }

  Json doc;
  doc["format"] = kAnalysisFormat;
  doc["strategy"] = strategy;
  doc["K"] = overall_k;

  std::ostringstream csv;
  csv << "target,gap,count,probability\n";

  Json targets = Json::array();
  for (std::size_t i = 0; i < num_targets; ++i) {
    Json entry;
    entry["target"] = i + 1;
    const double alpha = double_value_of(artifact.at("values"), i);
    entry["value"] = artifact.at("values").at(i);

    AttackerResponse response;
    if (certificate) {
      response = certificate->targets[i].response;
    } else if (!censuses[i].empty()) {
      const auto biased = size_biased(censuses[i]);
      std::vector<long long> support;
      std::vector<double> probs;
      for (const auto& [gap, prob] : biased) {
        support.push_back(gap);
        probs.push_back(prob);
      }
      response = best_response(alpha, gap_cdf(support, probs));
      response.target = i;
    }
    entry["t_star"] = response.t_star;
    entry["utility"] = response.utility;
    entry["ratio_to_quarter"] = response.ratio_to_quarter;

    Json hist = Json::object();
    const auto biased = size_biased(censuses[i]);
    for (const auto& [gap, prob] : biased) {
      Json cell;
      cell["count"] = censuses[i].at(gap);
      cell["probability"] = prob;
      hist[std::to_string(gap)] = cell;
      csv << (i + 1) << ',' << gap << ',' << censuses[i].at(gap) << ',' << prob << '\n';
    }
    entry["gaps"] = hist;
    targets.push_back(entry);
  }
  doc["targets"] = targets;
  if (certificate) doc["certified"] = certificate->certified;

  Analysis analysis;
  analysis.document = std::move(doc);
  analysis.gap_csv = csv.str();
  return analysis;
}

std::string ratio_table_text() {
  std::ostringstream os;
  os << std::left << std::setw(16) << "strategy" << std::right << std::setw(12)
     << "worst-ratio" << '\n';
  os << std::string(28, '-') << '\n';
  for (const RatioRow& row : ratio_table()) {
    os << std::left << std::setw(16) << row.strategy << std::right << std::setw(12)
       << std::fixed << std::setprecision(4) << row.ratio << '\n';
  }
  return os.str();
}

std::string ratio_table_csv() {
  std::ostringstream os;
  os << "strategy,worst_ratio\n";
  for (const RatioRow& row : ratio_table()) {
    os << row.strategy << ',' << std::fixed << std::setprecision(6) << row.ratio << '\n';
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InputError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace patrol
