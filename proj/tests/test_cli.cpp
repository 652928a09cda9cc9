#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;
};

// Runs the installed CLI binary through the shell and captures one stream.
RunResult run_cli(const std::string& args, bool capture_stderr = false) {
  const std::string cmd = std::string(SPISO_CLI_PATH) + " " + args +
                          (capture_stderr ? " 2>&1 1>/dev/null" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& stem) {
  return "/tmp/spiso_cli_" + stem + "_" + std::to_string(::getpid()) + ".csv";
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  out << body;
}

std::string simulate_grid(const std::string& stem, const std::string& extra = "") {
  const std::string path = temp_path(stem);
  const auto r = run_cli("simulate --design grid:16x16:1 --model exp --sill 1 --range 2 "
                         "--seed 11 " + extra);
  REQUIRE(r.exit_code == 0);
  write_file(path, r.output);
  return path;
}

const char* kLags = "\"1,0;0,1;1,1;-1,1\"";
const char* kContrasts = "\"1,-1,0,0;0,0,1,-1\"";

}  // namespace

TEST_CASE("guan-grid emits schema-stable JSON") {
  const std::string input = simulate_grid("grid");
  const auto r = run_cli("test guan-grid --input " + input + " --delta 1 --lags " + kLags +
                         " --contrasts " + std::string(kContrasts) +
                         " --window-dims 4,4 --finite-adjust --format json");
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.output);
  CHECK(j.at("test") == "guan-grid");
  CHECK(j.at("df") == 2);
  CHECK(j.at("statistic").is_number());
  CHECK(j.at("p_value").is_number());
  CHECK(j.at("p_value_finite").is_number());
  CHECK(j.at("n_subblocks") == 13 * 13);
  CHECK(j.at("estimates").size() == 4);
  CHECK(j.at("estimates")[0].contains("lag"));
  CHECK(j.at("estimates")[0].contains("gamma"));
  CHECK(j.at("estimates")[0].contains("support"));
  CHECK(j.at("sigma").size() == 4);
  CHECK(j.at("sigma")[0].size() == 4);
  CHECK(j.contains("config"));
  std::remove(input.c_str());
}

TEST_CASE("guan-grid text output carries the headline numbers") {
  const std::string input = simulate_grid("text");
  const auto r = run_cli("test guan-grid --input " + input + " --delta 1 --lags " + kLags +
                         " --contrasts " + std::string(kContrasts) +
                         " --window-dims 4,4 --format text");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("Chi-sq = ") != std::string::npos);
  CHECK(r.output.find("df = 2") != std::string::npos);
  CHECK(r.output.find("p-value = ") != std::string::npos);
  CHECK(r.output.find("sample estimates") != std::string::npos);
  std::remove(input.c_str());
}

TEST_CASE("missing --lags exits 2 and names the flag") {
  const std::string input = simulate_grid("nolags");
  const auto r = run_cli("test guan-grid --input " + input +
                         " --delta 1 --window-dims 4,4", /*capture_stderr=*/true);
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("--lags") != std::string::npos);
  std::remove(input.c_str());
}

TEST_CASE("missing input file exits 2") {
  const auto r = run_cli("test guan-grid --input /tmp/spiso_no_such_file.csv --delta 1 "
                         "--lags " + std::string(kLags) + " --contrasts " + kContrasts,
                         /*capture_stderr=*/true);
  CHECK(r.exit_code == 2);
  CHECK(!r.output.empty());
}

TEST_CASE("maity is deterministic for a fixed seed") {
  const std::string input = temp_path("maity");
  {
    const auto sim = run_cli(
        "simulate --design uniform:300:0,20,0,20 --model exp --sill 1 --range 2 --seed 5");
    REQUIRE(sim.exit_code == 0);
    write_file(input, sim.output);
  }
  const std::string args =
      "test maity --input " + input + " --lags " + kLags + " --contrasts " + kContrasts +
      " --xlims 0,20 --ylims 0,20 --grid-spacing 1.25,1.25 --block-dims 4,4 "
      "--nboot 60 --seed 42 --format json";
  const auto r1 = run_cli(args);
  const auto r2 = run_cli(args);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output == r2.output);
  const auto j = nlohmann::json::parse(r1.output);
  CHECK(j.at("test") == "maity");
  CHECK(j.at("n_boot") == 60);
  CHECK(j.at("seed") == 42);
  std::remove(input.c_str());
}

TEST_CASE("simulate is byte-identical across runs") {
  const std::string args =
      "simulate --design grid:10x10:1 --model gauss --sill 2 --range 3 --nugget 0.1 --seed 9";
  const auto r1 = run_cli(args);
  const auto r2 = run_cli(args);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output == r2.output);
  // header plus one row per grid node
  int lines = 0;
  for (char c : r1.output) lines += (c == '\n');
  CHECK(lines == 101);
  CHECK(r1.output.rfind("x,y,value", 0) == 0);
}

TEST_CASE("variogram on a constant field is all zeros") {
  const std::string input = temp_path("const");
  std::ostringstream body;
  body << "x,y,value\n";
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) body << i << "," << j << ",3.5\n";
  write_file(input, body.str());
  const auto r = run_cli("variogram --input " + input);
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line.rfind("angle", 0) == 0);
  int rows = 0;
  while (std::getline(lines, line)) {
    const auto last = line.find_last_of(',');
    // gamma is not the last column (npairs is); parse the table generically
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() >= 4);
    CHECK(std::stod(cells[cells.size() - 2]) == doctest::Approx(0.0));
    ++rows;
    (void)last;
  }
  CHECK(rows > 0);
  std::remove(input.c_str());
}

TEST_CASE("detrend removes an exact planar trend") {
  const std::string input = temp_path("plane");
  std::ostringstream body;
  body << "x,y,value\n";
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) body << i << "," << j << "," << (1.0 + 2.0 * i - 0.5 * j) << "\n";
  write_file(input, body.str());
  const auto r = run_cli("detrend --input " + input + " --degree 1");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "x,y,value");
  while (std::getline(lines, line)) {
    const auto pos = line.find_last_of(',');
    CHECK(std::abs(std::stod(line.substr(pos + 1))) < 1e-9);
  }
  std::remove(input.c_str());
}

TEST_CASE("unknown flag exits 2") {
  const auto r = run_cli("test guan-grid --no-such-flag", /*capture_stderr=*/true);
  CHECK(r.exit_code == 2);
}
