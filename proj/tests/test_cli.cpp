#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"
#include "support/proc.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

const char* kQuadTensor = R"({"order": 3, "dim": 2, "entries": [
  {"idx": [1,1,1], "val": 1}, {"idx": [1,2,2], "val": 1},
  {"idx": [2,1,1], "val": 1}, {"idx": [2,2,1], "val": -2},
  {"idx": [2,2,2], "val": 1}]})";

const char* kQuadInstance = R"({"tensor": {"order": 3, "dim": 2, "entries": [
  {"idx": [1,1,1], "val": 1}, {"idx": [1,2,2], "val": 1},
  {"idx": [2,1,1], "val": 1}, {"idx": [2,2,1], "val": -2},
  {"idx": [2,2,2], "val": 1}]}, "q": [-1.5, -0.5]})";

const char* kNegIdTensor = R"({"order": 3, "dim": 2, "entries": [
  {"idx": [1,1,1], "val": -1}, {"idx": [2,2,2], "val": -1}]})";

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("tcpkit_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name, const std::string& content) const {
    const fs::path p = path / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
};

std::string cli() { return std::string(TCPKIT_CLI_PATH); }

ordered_json parse_stdout(const std::string& out) { return ordered_json::parse(out); }

std::string strip_timing(const std::string& out) {
  ordered_json j = parse_stdout(out);
  j.erase("timing_ms");
  return j.dump();
}

}  // namespace

TEST_CASE("pm-check reproduces the reference arithmetic") {
  TempDir dir;
  const std::string inst = dir.file("inst.json", kQuadInstance);
  const auto res =
      proc::run(cli() + " pm-check --instance " + inst + " --x 1,0 --y 1,1 --json --quiet 2>/dev/null");
  CHECK(res.exit_code == 0);
  const ordered_json j = parse_stdout(res.out);
  CHECK(j["report"]["lhs"].get<double>() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(j["report"]["rhs"].get<double>() == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(j["report"]["violated"].get<bool>());
  CHECK(j["config"]["command"] == "pm-check");
}

TEST_CASE("classify exit codes follow the verdict") {
  TempDir dir;
  const std::string quad = dir.file("quad.json", kQuadTensor);
  const std::string neg = dir.file("neg.json", kNegIdTensor);

  auto res = proc::run(cli() + " classify --tensor " + quad +
                       " --class strictly-semi-positive --json --quiet 2>/dev/null");
  CHECK(res.exit_code == 0);
  CHECK(parse_stdout(res.out)["report"]["verdict"] == "holds");

  res = proc::run(cli() + " classify --tensor " + neg +
                  " --class semi-positive --json --quiet 2>/dev/null");
  CHECK(res.exit_code == 1);
  CHECK(parse_stdout(res.out)["report"]["verdict"] == "violated");

  // odd order: the P class is violated, so the combined run reports 1
  res = proc::run(cli() + " classify --tensor " + quad + " --class all --json --quiet 2>/dev/null");
  CHECK(res.exit_code == 1);
  REQUIRE(parse_stdout(res.out)["report"].is_array());
  CHECK(parse_stdout(res.out)["report"].size() == 9);
}

TEST_CASE("solve prints the full solution list") {
  TempDir dir;
  const std::string inst = dir.file("inst.json", kQuadInstance);
  const auto res = proc::run(cli() + " solve --instance " + inst + " --json --quiet 2>/dev/null");
  CHECK(res.exit_code == 0);
  const ordered_json j = parse_stdout(res.out);
  REQUIRE(j["report"].is_array());
  CHECK(j["report"].size() == 3);
  for (const auto& s : j["report"]) {
    CHECK(s["verified"].get<bool>());
    CHECK(s["residuals"].contains("compl"));
  }
}

TEST_CASE("operational failures exit with 2") {
  TempDir dir;
  const std::string broken = dir.file("broken.json", "{not json");
  auto res = proc::run(cli() + " classify --tensor " + broken + " --class p 2>/dev/null");
  CHECK(res.exit_code == 2);

  res = proc::run(cli() + " classify --class p 2>/dev/null");  // missing --tensor
  CHECK(res.exit_code == 2);

  res = proc::run(cli() + " solve --instance /nonexistent.json 2>/dev/null");
  CHECK(res.exit_code == 2);

  const std::string inst = dir.file("inst.json", kQuadInstance);
  res = proc::run(cli() + " solve --instance " + inst + " --method bogus 2>/dev/null");
  CHECK(res.exit_code == 2);
}

TEST_CASE("reports replay byte-identically, timing aside") {
  TempDir dir;
  const std::string quad = dir.file("quad.json", kQuadTensor);
  const std::string inst = dir.file("inst.json", kQuadInstance);
  const std::vector<std::string> commands = {
      " classify --tensor " + quad + " --class copositive --seed 7 --json --quiet",
      " solve --instance " + inst + " --method merit --seed 7 --json --quiet",
      " beta --tensor " + quad + " --seed 7 --json --quiet",
      " pareto --tensor " + quad + " --kind z --seed 7 --json --quiet",
      " gamma --instance " + inst + " --seed 7 --json --quiet",
  };
  for (const auto& cmd : commands) {
    CAPTURE(cmd);
    const auto r1 = proc::run(cli() + cmd + " 2>/dev/null");
    const auto r2 = proc::run(cli() + cmd + " 2>/dev/null");
    CHECK(r1.exit_code == r2.exit_code);
    CHECK(strip_timing(r1.out) == strip_timing(r2.out));
  }
}

TEST_CASE("worker cap does not change the report") {
  TempDir dir;
  const std::string quad = dir.file("quad.json", kQuadTensor);
  const std::string base = " beta --tensor " + quad + " --seed 3 --json --quiet";
  const auto r1 = proc::run(cli() + base + " --threads 1 2>/dev/null");
  const auto r4 = proc::run(cli() + base + " --threads 4 2>/dev/null");
  ordered_json j1 = parse_stdout(r1.out);
  ordered_json j4 = parse_stdout(r4.out);
  CHECK(j1["report"] == j4["report"]);
}

TEST_CASE("--output writes the report file") {
  TempDir dir;
  const std::string quad = dir.file("quad.json", kQuadTensor);
  const std::string out_path = (dir.path / "report.json").string();
  const auto res = proc::run(cli() + " beta --tensor " + quad + " --quiet --output " + out_path +
                             " 2>/dev/null");
  CHECK(res.exit_code == 0);
  CHECK(res.out.empty());
  std::ifstream in(out_path);
  REQUIRE(in.good());
  ordered_json j;
  in >> j;
  CHECK(j["report"]["value"].get<double>() == doctest::Approx(0.408189).epsilon(5e-3));
}

TEST_CASE("bounds consumes a solve report file") {
  TempDir dir;
  const char* diag_instance = R"({"tensor": {"order": 3, "dim": 2, "entries": [
    {"idx": [1,1,1], "val": 1}, {"idx": [2,2,2], "val": 1}]}, "q": [-1, -4]})";
  const std::string inst = dir.file("diag.json", diag_instance);
  const std::string solutions_path = (dir.path / "solutions.json").string();

  auto res = proc::run(cli() + " solve --instance " + inst + " --quiet --output " +
                       solutions_path + " 2>/dev/null");
  REQUIRE(res.exit_code == 0);

  res = proc::run(cli() + " bounds --instance " + inst + " --solutions " + solutions_path +
                  " --compute --json --quiet 2>/dev/null");
  CHECK(res.exit_code == 0);
  const ordered_json j = parse_stdout(res.out);
  REQUIRE(j["report"].is_array());
  REQUIRE(j["report"].size() == 1);
  for (const auto& b : j["report"][0]["bounds"]) {
    CHECK(b["satisfied"].get<bool>());
  }
  CHECK(j["report"][0]["bounds"].size() == 3);
}

TEST_CASE("feasible command scales a witness") {
  TempDir dir;
  const std::string inst = dir.file("inst.json", kQuadInstance);
  const auto res = proc::run(cli() + " feasible --instance " + inst +
                             " --witness 1,0.2 --json --quiet 2>/dev/null");
  CHECK(res.exit_code == 0);
  const ordered_json j = parse_stdout(res.out);
  CHECK(j["report"]["x"][0].get<double>() == doctest::Approx(1.2010).epsilon(1e-3));
  for (const auto& w : j["report"]["w"]) CHECK(w.get<double>() >= -1e-9);
}
