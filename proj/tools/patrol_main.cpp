// Command-line frontend: generate schedules, analyze attacker responses,
// reproduce the worst-case ratio table. Exit codes: 0 success, 2 input
// error, 3 internal failure.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "patrol/artifact.hpp"

namespace {

int run_generate(const std::string& config_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed_override, bool quiet) {
  patrol::Config config = patrol::load_config(config_path);
  if (seed_override) config.seed = *seed_override;
  const patrol::Json artifact = patrol::generate_artifact(config);
  const std::string body = artifact.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << body;
  } else {
    patrol::write_file(out_path, body);
    if (!quiet) {
      std::cout << "wrote " << out_path << " (strategy=" << artifact.at("strategy").get<std::string>()
                << ", K=" << artifact.at("K").get<double>() << ")\n";
    }
  }
  return 0;
}

int run_analyze(const std::string& artifact_path, const std::string& out_path,
                const std::string& csv_path, bool quiet) {
  const patrol::Json artifact = patrol::read_json_file(artifact_path);
  const patrol::Analysis analysis = patrol::analyze_artifact(artifact);
  const std::string body = analysis.document.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << body;
  } else {
    patrol::write_file(out_path, body);
    if (!quiet) std::cout << "wrote " << out_path << "\n";
  }
  if (!csv_path.empty()) {
    patrol::write_file(csv_path, analysis.gap_csv);
    if (!quiet) std::cout << "wrote " << csv_path << "\n";
  }
  return 0;
}

int run_table(const std::string& csv_path, bool quiet) {
  std::cout << patrol::ratio_table_text();
  if (!csv_path.empty()) {
    patrol::write_file(csv_path, patrol::ratio_table_csv());
    if (!quiet) std::cout << "wrote " << csv_path << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Patrol schedule synthesis and verification"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, artifact_path, out_path, csv_path;
  std::optional<std::uint64_t> seed_override;
  bool quiet = false;
  app.add_flag("--quiet", quiet, "suppress status output");

  CLI::App* generate = app.add_subcommand("generate", "generate a schedule artifact");
  generate->add_option("--config", config_path, "config JSON path")->required();
  generate->add_option("--out", out_path, "artifact output path (stdout if omitted)");
  generate->add_option("--seed", seed_override, "override the config seed");

  CLI::App* analyze = app.add_subcommand("analyze", "analyze a schedule artifact");
  analyze->add_option("artifact", artifact_path, "schedule artifact path")->required();
  analyze->add_option("--out", out_path, "analysis JSON output path (stdout if omitted)");
  analyze->add_option("--csv", csv_path, "gap histogram CSV output path");

  CLI::App* table = app.add_subcommand("table", "print the worst-case ratio table");
  table->add_option("--csv", csv_path, "also write the table as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) return run_generate(config_path, out_path, seed_override, quiet);
    if (analyze->parsed()) return run_analyze(artifact_path, out_path, csv_path, quiet);
    return run_table(csv_path, quiet);
  } catch (const patrol::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 3;
  }
}
