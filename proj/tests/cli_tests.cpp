#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hsrm/harness.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string cli_path() {
  const char* path = std::getenv("HSRM_CLI_PATH");
  REQUIRE_MESSAGE(path != nullptr, "HSRM_CLI_PATH must point at the built binary");
  return path;
}

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("hsrm_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = cli_path() + " " + args + " >" +
                          (work_dir() / "stdout.txt").string() + " 2>" +
                          (work_dir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), ("missing file: " + path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("gen emits a loadable template") {
  const fs::path cfg = work_dir() / "template.json";
  CHECK(run_cli("gen --out " + cfg.string()) == 0);
  hsrm::RunConfig parsed = hsrm::load_config(cfg);
  CHECK(parsed.seeds.size() == 3);
  CHECK(parsed.detector.tour_len == 7);
}

TEST_CASE("gen to stdout parses as json") {
  const fs::path out = work_dir() / "stdout.txt";
  CHECK(run_cli("gen") == 0);
  json doc = json::parse(slurp(out));
  CHECK(doc.contains("detector"));
}

TEST_CASE("batch round trip and rerun byte identity") {
  const fs::path cfg = work_dir() / "batch_cfg.json";
  spit(cfg, R"({
    "seeds": [1, 2],
    "trace": true,
    "scenario": {"trajectories": [[6, 7, 8]], "noise_level": 0.1},
    "detector": {"n_iter": 20, "m": 6}
  })");
  const fs::path out1 = work_dir() / "b1";
  const fs::path out2 = work_dir() / "b2";
  CHECK(run_cli("batch --config " + cfg.string() + " --out " + out1.string()) == 0);
  CHECK(run_cli("batch --config " + cfg.string() + " --out " + out2.string()) == 0);

  const std::string report1 = slurp(out1 / "batch_report.json");
  const std::string report2 = slurp(out2 / "batch_report.json");
  CHECK(report1 == report2);
  CHECK(slurp(out1 / "trace_seed1.csv") == slurp(out2 / "trace_seed1.csv"));
  CHECK(slurp(out1 / "tau_trace_seed2.csv") == slurp(out2 / "tau_trace_seed2.csv"));

  json doc = json::parse(report1);
  CHECK(doc["runs"].size() == 2);
  CHECK(!doc["config"].contains("out_dir"));  // reports do not depend on output routing

  const std::string trace = slurp(out1 / "trace_seed1.csv");
  CHECK(trace.rfind("iteration,robot,node,alerts,tau_max,tau_mean\n", 0) == 0);
}

TEST_CASE("run writes a detailed report and honors --seed") {
  const fs::path cfg = work_dir() / "run_cfg.json";
  spit(cfg, R"({
    "seeds": [1, 2, 3],
    "scenario": {"trajectories": [[6, 7, 8]], "noise_level": 0.0},
    "detector": {"n_iter": 15, "m": 5}
  })");
  const fs::path out = work_dir() / "r1";
  CHECK(run_cli("run --config " + cfg.string() + " --seed 42 --trace --out " +
                out.string()) == 0);
  json doc = json::parse(slurp(out / "run_report.json"));
  CHECK(doc["seed"] == 42);
  CHECK(doc["alerts"].is_array());
  CHECK(fs::exists(out / "trace_seed42.csv"));
  CHECK(fs::exists(out / "tau_trace_seed42.csv"));
}

TEST_CASE("baseline flag adds a comparison run") {
  const fs::path cfg = work_dir() / "base_cfg.json";
  spit(cfg, R"({
    "seeds": [4],
    "scenario": {"trajectories": [[6, 7, 8]], "noise_level": 0.0},
    "detector": {"n_iter": 15, "m": 5}
  })");
  const fs::path out = work_dir() / "base_out";
  CHECK(run_cli("batch --config " + cfg.string() + " --baseline random_patrol --out " +
                out.string()) == 0);
  json doc = json::parse(slurp(out / "batch_report.json"));
  CHECK(!doc["runs"][0]["baseline"].is_null());
  CHECK(!doc["baseline_aggregate"].is_null());
}

TEST_CASE("config errors exit with code 1") {
  const fs::path bad_field = work_dir() / "bad_field.json";
  spit(bad_field, R"({"seeds":[1],"detector":{"q0":1.5}})");
  CHECK(run_cli("batch --config " + bad_field.string()) == 1);

  const fs::path unknown = work_dir() / "unknown.json";
  spit(unknown, R"({"seeds":[1],"detector":{"warp":9}})");
  CHECK(run_cli("batch --config " + unknown.string()) == 1);

  const fs::path missing_seeds = work_dir() / "missing_seeds.json";
  spit(missing_seeds, R"({"detector":{"m":5}})");
  CHECK(run_cli("run --config " + missing_seeds.string()) == 1);

  CHECK(run_cli("run --config " + (work_dir() / "no_such.json").string()) == 1);
  CHECK(run_cli("batch --no-such-flag") == 1);
  CHECK(run_cli("") == 1);  // a subcommand is required
}

TEST_CASE("runtime failures exit with code 2") {
  const fs::path cfg = work_dir() / "sink_cfg.json";
  spit(cfg, R"({
    "seeds": [1],
    "out_dir": "/dev/null/nested",
    "scenario": {"trajectories": [[6, 7]], "noise_level": 0.0},
    "detector": {"n_iter": 5, "m": 3}
  })");
  CHECK(run_cli("batch --config " + cfg.string()) == 2);
}

TEST_CASE("help and version exit cleanly") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("--version") == 0);
  CHECK(slurp(work_dir() / "stdout.txt").rfind("hsrm", 0) == 0);
}
