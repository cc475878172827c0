#ifndef PATROL_ARTIFACT_HPP
#define PATROL_ARTIFACT_HPP

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "patrol/core.hpp"

namespace patrol {

using Json = nlohmann::ordered_json;

// Errors a caller caused (bad config, malformed artifact): CLI exit code 2.
// Everything else (e.g. matching retries exhausted) maps to exit code 3.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Strategy { dyadic, golden, matching, iid };

std::string strategy_name(Strategy s);

struct Config {
  Strategy strategy = Strategy::dyadic;
  std::vector<std::string> value_text;  // as given; exact "a/b" or float for iid
  std::uint64_t seed = 0;
  std::size_t steps = 100'000;          // golden, iid
  double epsilon = 2.0;                 // matching
  int max_retries = 16;                 // matching
  bool exact_mixture = true;            // dyadic
  std::size_t samples = 32;             // dyadic sampled mode

  // Parsed exact values; throws InputError for invalid vectors. For iid the
  // values may be floats and only the float view is meaningful.
  ValueVector exact_values() const;
  std::vector<double> float_values() const;
};

Config parse_config(const Json& j);
Config load_config(const std::string& path);

// Runs the configured generator and returns the schedule artifact document.
Json generate_artifact(const Config& config);

struct Analysis {
  Json document;
  std::string gap_csv;  // header "target,gap,count,probability"
};

Analysis analyze_artifact(const Json& artifact);

std::string ratio_table_text();
std::string ratio_table_csv();

void write_file(const std::string& path, const std::string& content);
Json read_json_file(const std::string& path);

}  // namespace patrol

#endif
