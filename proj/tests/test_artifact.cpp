#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "patrol/artifact.hpp"

using namespace patrol;

namespace {

Json base_config(const std::string& strategy, std::vector<std::string> values,
                 std::uint64_t seed) {
  Json j;
  j["strategy"] = strategy;
  j["values"] = values;
  j["seed"] = seed;
  return j;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(parse_config(Json::array()), InputError);
  CHECK_THROWS_AS(parse_config(base_config("nope", {"1/2", "1/2"}, 1)), InputError);

  // Floats are rejected for exact strategies, accepted for iid.
  Json floats = base_config("dyadic", {}, 1);
  floats["values"] = {0.5, 0.5};
  CHECK_THROWS_AS(parse_config(floats), InputError);
  floats["strategy"] = "iid";
  CHECK_NOTHROW(parse_config(floats));

  // Sum != 1 and entry > 1/2 are input errors at generation time.
  const Config bad = parse_config(base_config("iid", {"0.3", "0.8"}, 1));
  CHECK_THROWS_AS(generate_artifact(bad), InputError);
  const Config bad2 = parse_config(base_config("dyadic", {"3/10", "8/10"}, 1));
  CHECK_THROWS_AS(generate_artifact(bad2), InputError);
}

TEST_CASE("dyadic artifact: structure and certified analysis") {
  Json cfg = base_config("dyadic", {"1/2", "1/3", "1/6"}, 7);
  const auto artifact = generate_artifact(parse_config(cfg));
  CHECK(artifact.at("format") == "patrol-schedule/1");
  const std::size_t period = artifact.at("period").get<std::size_t>();
  CHECK((period == 4 || period == 8));
  CHECK(artifact.at("K").get<double>() <= 2.0);
  CHECK(artifact.contains("mixture"));

  const auto analysis = analyze_artifact(artifact);
  CHECK(analysis.document.at("certified").get<bool>());
  for (const auto& target : analysis.document.at("targets")) {
    CHECK(std::abs(target.at("ratio_to_quarter").get<double>() - 1.0) <= 4e-9);
  }
  CHECK(analysis.gap_csv.rfind("target,gap,count,probability\n", 0) == 0);
}

TEST_CASE("dyadic artifact in sampled mode") {
  Json cfg = base_config("dyadic", {"1/2", "1/3", "1/6"}, 7);
  cfg["mixture_mode"] = "sampled";
  cfg["samples"] = 5;
  const auto artifact = generate_artifact(parse_config(cfg));
  CHECK_FALSE(artifact.contains("mixture"));
  CHECK(artifact.at("samples").size() == 5);
  const auto analysis = analyze_artifact(artifact);
  CHECK_FALSE(analysis.document.contains("certified"));
}

TEST_CASE("golden artifact: frequencies and three-gap histogram") {
  Json cfg = base_config("golden", {"1/2", "1/2"}, 1);
  cfg["steps"] = 100;
  const auto artifact = generate_artifact(parse_config(cfg));
  CHECK(artifact.at("sequence").size() == 100);
  long long count0 = 0;
  for (const auto& entry : artifact.at("sequence")) {
    if (entry.get<int>() == 1) ++count0;
  }
  CHECK(std::abs(count0 / 100.0 - 0.5) < 0.1);

  // Single target of frequency 3/10 (complement split to honor the 1/2 cap):
  // gap support must be {2, 3, 5}.
  Json cfg3 = base_config("golden", {"3/10", "7/20", "7/20"}, 3);
  cfg3["steps"] = 20'000;
  const auto artifact3 = generate_artifact(parse_config(cfg3));
  const auto analysis = analyze_artifact(artifact3);
  std::set<long long> support;
  for (const auto& [key, cell] : analysis.document.at("targets").at(0).at("gaps").items()) {
    support.insert(std::stoll(key));
  }
  CHECK(support == std::set<long long>{2, 3, 5});
  // CSV rows for target 1 carry exactly those gaps.
  CHECK(analysis.gap_csv.find("1,2,") != std::string::npos);
  CHECK(analysis.gap_csv.find("1,3,") != std::string::npos);
  CHECK(analysis.gap_csv.find("1,5,") != std::string::npos);
}

TEST_CASE("iid artifact analyzes close to the closed form") {
  Json cfg = base_config("iid", {"0.1", "0.45", "0.45"}, 11);
  cfg["steps"] = 200'000;
  const auto artifact = generate_artifact(parse_config(cfg));
  const auto analysis = analyze_artifact(artifact);
  const double utility = analysis.document.at("targets").at(0).at("utility").get<double>();
  const double closed = 0.1 * (-1.0 / std::log(0.9)) / std::exp(1.0);
  CHECK(utility == doctest::Approx(closed).epsilon(0.05));
}

TEST_CASE("matching artifact") {
  Json cfg = base_config("matching", {}, 5);
  std::vector<std::string> values(16, "1/16");
  cfg["values"] = values;
  cfg["epsilon"] = 2.0;
  const auto artifact = generate_artifact(parse_config(cfg));
  CHECK(artifact.at("period").get<long long>() == 16);
  CHECK(artifact.at("attempts").get<int>() >= 1);
  const auto analysis = analyze_artifact(artifact);
  CHECK(analysis.document.at("targets").size() == 16);
}

TEST_CASE("artifacts are byte-identical for identical config and seed") {
  Json cfg = base_config("dyadic", {"1/2", "1/3", "1/6"}, 123);
  const auto a = generate_artifact(parse_config(cfg));
  const auto b = generate_artifact(parse_config(cfg));
  CHECK(a.dump() == b.dump());

  Json golden_cfg = base_config("golden", {"1/2", "1/2"}, 9);
  golden_cfg["steps"] = 500;
  CHECK(generate_artifact(parse_config(golden_cfg)).dump() ==
        generate_artifact(parse_config(golden_cfg)).dump());
}

TEST_CASE("analyze rejects malformed artifacts") {
  CHECK_THROWS_AS(analyze_artifact(Json::object()), InputError);
  Json not_schedule;
  not_schedule["format"] = "something-else";
  CHECK_THROWS_AS(analyze_artifact(not_schedule), InputError);

  Json cfg = base_config("golden", {"1/2", "1/2"}, 1);
  cfg["steps"] = 50;
  auto artifact = generate_artifact(parse_config(cfg));
  artifact["sequence"] = Json::array();
  CHECK_THROWS_AS(analyze_artifact(artifact), InputError);
  artifact["sequence"] = {1, 2, 7};
  CHECK_THROWS_AS(analyze_artifact(artifact), InputError);
}
