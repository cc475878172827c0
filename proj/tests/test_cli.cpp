// End-to-end checks of the patrol binary: exit codes, determinism, file
// outputs. The binary path arrives via the PATROL_BIN environment variable
// (set by CTest); tests are skipped when it is missing.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string bin_path() {
  const char* bin = std::getenv("PATROL_BIN");
  return bin ? bin : "";
}

std::string tmp_dir() {
  const char* dir = std::getenv("PATROL_TMP");
  return dir ? dir : "/tmp";
}

int run(const std::string& args) {
  const std::string cmd = bin_path() + " " + args + " > " + tmp_dir() +
                          "/cli_stdout.txt 2> " + tmp_dir() + "/cli_stderr.txt";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("cli: generate + analyze round trip with deterministic artifacts") {
  if (bin_path().empty()) {
    MESSAGE("PATROL_BIN not set; skipping");
    return;
  }
  const std::string dir = tmp_dir();
  spit(dir + "/config.json",
       R"({"strategy":"dyadic","values":["1/2","1/3","1/6"],"seed":7})");

  REQUIRE(run("generate --config " + dir + "/config.json --out " + dir + "/a1.json --quiet") == 0);
  REQUIRE(run("generate --config " + dir + "/config.json --out " + dir + "/a2.json --quiet") == 0);
  CHECK(slurp(dir + "/a1.json") == slurp(dir + "/a2.json"));

  REQUIRE(run("analyze " + dir + "/a1.json --out " + dir + "/an.json --csv " + dir +
              "/hist.csv --quiet") == 0);
  const std::string analysis = slurp(dir + "/an.json");
  CHECK(analysis.find("\"certified\": true") != std::string::npos);
  CHECK(slurp(dir + "/hist.csv").rfind("target,gap,count,probability\n", 0) == 0);

  // Seed override changes the draw but keeps the pipeline green.
  REQUIRE(run("generate --config " + dir + "/config.json --seed 8 --out " + dir +
              "/a3.json --quiet") == 0);
  REQUIRE(run("analyze " + dir + "/a3.json --out " + dir + "/an3.json --quiet") == 0);
}

TEST_CASE("cli: invalid values exit with code 2") {
  if (bin_path().empty()) return;
  const std::string dir = tmp_dir();
  // Sum != 1 and an entry above 1/2.
  spit(dir + "/bad.json", R"({"strategy":"iid","values":[0.3,0.8],"seed":1})");
  CHECK(run("generate --config " + dir + "/bad.json --out " + dir + "/bad_out.json") == 2);

  spit(dir + "/bad2.json", R"({"strategy":"dyadic","values":["1/2","1/2","1/2"],"seed":1})");
  CHECK(run("generate --config " + dir + "/bad2.json") == 2);

  spit(dir + "/empty.json", "{}");
  CHECK(run("generate --config " + dir + "/empty.json") == 2);
  CHECK(run("analyze " + dir + "/empty.json") == 2);
  CHECK(run("analyze " + dir + "/no_such_file.json") == 2);
}

TEST_CASE("cli: exhausted matching retries exit with code 3") {
  if (bin_path().empty()) return;
  const std::string dir = tmp_dir();
  // Seed 29's first theta draw strands a token on the two-slot instance.
  spit(dir + "/match_fail.json",
       R"({"strategy":"matching","values":["1/2","1/2"],"seed":29,"max_retries":1})");
  CHECK(run("generate --config " + dir + "/match_fail.json --out " + dir + "/mf.json") == 3);
}

TEST_CASE("cli: table prints the three strategy rows") {
  if (bin_path().empty()) return;
  const std::string dir = tmp_dir();
  REQUIRE(run("table --csv " + dir + "/table.csv") == 0);
  const std::string text = slurp(dir + "/cli_stdout.txt");
  CHECK(text.find("1.0058") != std::string::npos);
  CHECK(text.find("1.4715") != std::string::npos);
  CHECK(text.find("1.0000") != std::string::npos);
  const std::string csv = slurp(dir + "/table.csv");
  CHECK(csv.rfind("strategy,worst_ratio\n", 0) == 0);
  CHECK(csv.find("golden-ratio") != std::string::npos);
}
