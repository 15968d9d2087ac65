#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
  std::string out;
  int exit_code = -1;
};

std::string cli_path() {
  const char* p = std::getenv("CUBENORM_CLI");
  REQUIRE_MESSAGE(p != nullptr, "CUBENORM_CLI must point at the built binary");
  return std::string(p);
}

// Runs a shell command, capturing stdout and the exit code. stderr is dropped.
RunResult run(const std::string& shell_command) {
  RunResult r;
  FILE* pipe = popen((shell_command + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const std::string& s) { return "\"" + s + "\""; }

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!line.empty() && (line[0] == 'x' || line[0] == 'r')) continue;  // header
    lines.push_back(line);
  }
  return lines;
}

std::vector<double> split_csv(const std::string& line) {
  std::vector<double> vals;
  std::istringstream ls(line);
  std::string cell;
  while (std::getline(ls, cell, ',')) vals.push_back(std::stod(cell));
  return vals;
}

}  // namespace

TEST_CASE("grid: default lattice is 61x61 with an exact origin row") {
  const auto r = run(q(cli_path()) + " grid");
  CHECK(r.exit_code == 0);
  const auto rows = data_lines(r.out);
  REQUIRE(rows.size() == 3721);
  bool found_origin = false;
  for (const auto& row : rows) {
    if (row == "0,0,0.25") found_origin = true;
  }
  CHECK(found_origin);
}

TEST_CASE("grid: p = 1 gives standard normal values") {
  const auto r = run(q(cli_path()) + " grid -p 1 --steps 5 --range -2:2");
  CHECK(r.exit_code == 0);
  const auto rows = data_lines(r.out);
  REQUIRE(rows.size() == 5);
  const auto center = split_csv(rows[2]);
  CHECK(center[0] == 0.0);
  CHECK(center[1] == 0.3989422804014327);
  const auto edge = split_csv(rows[0]);
  CHECK(edge[0] == -2.0);
  CHECK(std::fabs(edge[1] - 0.053990966513188052) <= 1e-16);
}

TEST_CASE("grid: p = 3 renders the origin as inf") {
  const auto r = run(q(cli_path()) + " grid -p 3 --steps 3 --range -1:1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0,0,0,inf\n") != std::string::npos);
}

TEST_CASE("grid: json format carries meta and data") {
  const auto r = run(q(cli_path()) + " grid -p 2 --steps 3 --range -1:1 --format json");
  CHECK(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["tool"] == "cubenorm");
  CHECK(doc["meta"]["command"] == "grid");
  REQUIRE(doc["data"].size() == 9);
  CHECK(doc["data"][4]["x"][0] == 0.0);
  CHECK(doc["data"][4]["density"] == 0.25);
}

TEST_CASE("sample: reruns are byte identical and metadata is complete") {
  const auto a = run(q(cli_path()) + " sample -p 2 -n 100 --seed 9");
  const auto b = run(q(cli_path()) + " sample -p 2 -n 100 --seed 9");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("# generator_id: splitmix64-rowblock-v1\n") != std::string::npos);
  CHECK(a.out.find("# seed: 9\n") != std::string::npos);
  CHECK(a.out.find("# p: 2\n") != std::string::npos);
  CHECK(a.out.find("# n: 100\n") != std::string::npos);
  CHECK(data_lines(a.out).size() == 100);

  const auto j = run(q(cli_path()) + " sample -p 3 -n 10 --seed 4 --format json");
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["meta"]["seed"] == 4);
  CHECK(doc["meta"]["generator_id"] == "splitmix64-rowblock-v1");
  REQUIRE(doc["data"].size() == 10);
  REQUIRE(doc["data"][0].size() == 3);
}

TEST_CASE("posterior: arcsine law at the origin and a small residual") {
  const auto r = run(q(cli_path()) + " posterior 0 0 64");
  CHECK(r.exit_code == 0);
  const auto pos = r.out.find("# normalization_residual: ");
  REQUIRE(pos != std::string::npos);
  const double residual = std::stod(r.out.substr(pos + 26));
  CHECK(std::fabs(residual) <= 1e-6);

  const auto rows = data_lines(r.out);
  REQUIRE(rows.size() == 64);
  constexpr double kPi = 3.141592653589793238462643383279502884;
  for (const auto& row : rows) {
    const auto v = split_csv(row);
    const double want = 1.0 / (kPi * std::sqrt((1.0 - v[0]) * (1.0 + v[0])));
    CHECK(std::fabs(v[1] - want) <= 1e-10);
  }
}

TEST_CASE("bf: prints the origin Bayes factor to 15 significant digits") {
  const auto r = run(q(cli_path()) + " bf 0 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0.636619772367581\n");
}

TEST_CASE("verify: single suite runs clean") {
  const auto r = run(q(cli_path()) + " verify --suites laplace");
  CHECK(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["sample_source"] == "none");
  CHECK(doc["data"]["summary"]["all_passed"] == true);
  CHECK(doc["data"]["summary"]["checks"] == 5);
  REQUIRE(doc["data"]["suites"].size() == 1);
  CHECK(doc["data"]["suites"][0]["suite"] == "laplace");
}

TEST_CASE("verify: consumes a piped sample and accepts it") {
  const auto r = run(q(cli_path()) + " sample -p 2 -n 50000 --seed 3 | " + q(cli_path()) +
                     " verify --suites sampler");
  CHECK(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["sample_source"] == "stdin");
  CHECK(doc["data"]["summary"]["all_passed"] == true);
}

TEST_CASE("verify: rejects a sample that is not normal") {
  // Symmetric-uniform columns: the KS distance to the normal is ~0.159.
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "cubenorm_test_uniform.csv";
  {
    std::ofstream f(path);
    f << "x1,x2\n";
    std::uint64_t s = 1;
    const auto next = [&s]() {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      return 2.0 * (static_cast<double>(s >> 11) / 9007199254740992.0) - 1.0;
    };
    for (int i = 0; i < 5000; ++i) f << next() << "," << next() << "\n";
  }
  const auto r = run(q(cli_path()) + " verify --suites sampler < " + q(path.string()));
  CHECK(r.exit_code == 1);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["data"]["summary"]["all_passed"] == false);
  std::filesystem::remove(path);
}

TEST_CASE("exit codes for bad usage and runtime failures") {
  CHECK(run(q(cli_path()) + " sample -p 2 -n 0").exit_code == 2);
  CHECK(run(q(cli_path()) + " posterior 0 0 8").exit_code == 2);
  CHECK(run(q(cli_path()) + " grid --range 3:-3").exit_code == 2);
  CHECK(run(q(cli_path()) + " grid --range notanumber").exit_code == 2);
  CHECK(run(q(cli_path()) + " grid --bogus-flag").exit_code == 2);
  CHECK(run(q(cli_path()) + " verify --tol 1e-13").exit_code == 2);
  CHECK(run(q(cli_path()) + " verify --suites nosuchsuite").exit_code == 2);
  CHECK(run(q(cli_path()) + " nosuchcommand").exit_code == 2);
  // Posterior far outside the bulk: the normalizer underflows -> runtime failure.
  CHECK(run(q(cli_path()) + " posterior 40 40").exit_code == 3);
  // Help is informational, not an error.
  CHECK(run(q(cli_path()) + " --help").exit_code == 0);
}
