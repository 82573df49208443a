#include <doctest.h>

#include <string>

#include <json.hpp>

#include "hsrm/errors.hpp"
#include "hsrm/harness.hpp"

using namespace hsrm;
using json = nlohmann::json;

namespace {

std::string message_of(const std::string& text) {
  try {
    parse_config(text, "test");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal config materializes every default") {
  RunConfig cfg = parse_config(R"({"seeds": [1]})", "test");
  CHECK(cfg.graph.kind == GraphKind::kGrid);
  CHECK(cfg.graph.rows == 5);
  CHECK(cfg.graph.cols == 5);
  CHECK(cfg.scenario.intruders == 1);
  CHECK(cfg.scenario.walk_len == 6);
  CHECK(cfg.scenario.base_intensity == 5.0);
  REQUIRE(cfg.scenario.horizon.has_value());
  CHECK(*cfg.scenario.horizon == 100);
  REQUIRE(cfg.scenario.threshold.has_value());
  CHECK(*cfg.scenario.threshold == 1.0);
  CHECK(cfg.detector.tour_len == 7);  // min(25, ceil(sqrt(25)) + 2)
  REQUIRE(cfg.detector.theta_report.has_value());
  CHECK(*cfg.detector.theta_report == 1.0);
  REQUIRE(cfg.detector.evaporation.has_value());
  CHECK(*cfg.detector.evaporation == 0.5);
  REQUIRE(cfg.detector.kappa.has_value());
  CHECK(*cfg.detector.kappa == 5.0);
  CHECK(cfg.baseline == BaselineKind::kNone);
  CHECK(cfg.out_dir == "out");
  CHECK_FALSE(cfg.trace);
}

TEST_CASE("template round-trips through the parser") {
  const std::string text = config_template_json();
  RunConfig cfg = parse_config(text, "template");
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3});
  CHECK(cfg.detector.tour_len == 7);
}

TEST_CASE("unknown fields are rejected by name") {
  CHECK(message_of(R"({"seeds":[1],"bogus":1})").find("bogus") != std::string::npos);
  CHECK(message_of(R"({"seeds":[1],"detector":{"alpha":2}})").find("alpha") !=
        std::string::npos);
  CHECK(message_of(R"({"seeds":[1],"graph":{"size":9}})").find("size") !=
        std::string::npos);
  CHECK(message_of(R"({"seeds":[1],"scenario":{"speed":2}})").find("speed") !=
        std::string::npos);
}

TEST_CASE("domain violations name the field") {
  CHECK(message_of(R"({"seeds":[1],"detector":{"q0":1.5}})").find("q0") !=
        std::string::npos);
  CHECK(message_of(R"({"seeds":[1],"detector":{"tau0":0}})").find("tau0") !=
        std::string::npos);
  CHECK(message_of(R"({"seeds":[1],"detector":{"m":0}})").find("m") !=
        std::string::npos);
  CHECK(message_of(R"({"seeds":[1],"scenario":{"noise_level":-1}})")
            .find("noise_level") != std::string::npos);
}

TEST_CASE("seed list rules") {
  CHECK_THROWS_AS(parse_config(R"({})", "test"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"seeds":[]})", "test"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"seeds":[1,2,1]})", "test"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"seeds":[-1]})", "test"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"seeds":"1"})", "test"), ConfigError);
}

TEST_CASE("malformed json reports its origin") {
  CHECK(message_of("{not json").find("test") != std::string::npos);
}

TEST_CASE("horizon must cover the iteration count") {
  CHECK_THROWS_AS(
      parse_config(R"({"seeds":[1],"scenario":{"horizon":50},"detector":{"n_iter":100}})",
                   "test"),
      ConfigError);
  RunConfig ok = parse_config(
      R"({"seeds":[1],"scenario":{"horizon":120},"detector":{"n_iter":100}})", "test");
  CHECK(*ok.scenario.horizon == 120);
}

TEST_CASE("explicit trajectories exclude generator knobs") {
  CHECK_THROWS_AS(
      parse_config(
          R"({"seeds":[1],"scenario":{"trajectories":[[0,1]],"intruders":2}})", "test"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config(
          R"({"seeds":[1],"scenario":{"trajectories":[[0,1]],"walk_len":4}})", "test"),
      ConfigError);
  RunConfig cfg = parse_config(
      R"({"seeds":[1],"scenario":{"trajectories":[[0,1,2],[5,6]]}})", "test");
  CHECK(cfg.scenario.trajectories.size() == 2);
  CHECK(cfg.scenario.intruders == 2);
}

TEST_CASE("graph specs") {
  SUBCASE("explicit needs n and edges") {
    CHECK_THROWS_AS(parse_config(R"({"seeds":[1],"graph":{"kind":"explicit"}})", "test"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"seeds":[1],"graph":{"kind":"explicit","n":3}})", "test"),
        ConfigError);
    RunConfig cfg = parse_config(
        R"({"seeds":[1],"graph":{"kind":"explicit","n":3,"edges":[[0,1],[1,2,2.0]]}})",
        "test");
    SensorGraph g = build_graph_from_spec(cfg.graph);
    CHECK(g.node_count() == 3);
    CHECK(g.distance(1, 2) == 2.0);
    CHECK(g.distance(0, 1) == 1.0);  // omitted distance defaults to 1
  }
  SUBCASE("random needs n") {
    CHECK_THROWS_AS(parse_config(R"({"seeds":[1],"graph":{"kind":"random"}})", "test"),
                    ConfigError);
    RunConfig cfg = parse_config(
        R"({"seeds":[1],"graph":{"kind":"random","n":12,"density":0.3,"seed":4}})",
        "test");
    SensorGraph g = build_graph_from_spec(cfg.graph);
    CHECK(g.node_count() == 12);
    SensorGraph again = build_graph_from_spec(cfg.graph);
    CHECK(g.edge_count() == again.edge_count());
  }
  SUBCASE("bad kind and bad shapes") {
    CHECK_THROWS_AS(parse_config(R"({"seeds":[1],"graph":{"kind":"torus"}})", "test"),
                    ConfigError);
    CHECK_THROWS_AS(
        parse_config(R"({"seeds":[1],"graph":{"kind":"grid","rows":1,"cols":1}})",
                     "test"),
        ConfigError);
    CHECK_THROWS_AS(
        parse_config(
            R"({"seeds":[1],"graph":{"kind":"explicit","n":3,"edges":[[0,0,1.0]]}})",
            "test"),
        ConfigError);
  }
  SUBCASE("builder wraps construction failures as config errors") {
    RunConfig cfg = parse_config(
        R"({"seeds":[1],"graph":{"kind":"explicit","n":4,"edges":[[0,1],[2,3]]}})",
        "test");
    CHECK_THROWS_AS(build_graph_from_spec(cfg.graph), ConfigError);
  }
}

TEST_CASE("scenario builder validates trajectories against the graph") {
  RunConfig cfg = parse_config(
      R"({"seeds":[1],"scenario":{"trajectories":[[0,24]]}})", "test");
  SensorGraph g = build_graph_from_spec(cfg.graph);
  CHECK_THROWS_AS(build_scenario_from_spec(cfg.scenario, g), ConfigError);

  RunConfig ok = parse_config(
      R"({"seeds":[1],"scenario":{"trajectories":[[6,7,8]]}})", "test");
  AttackScenario sc = build_scenario_from_spec(ok.scenario, g);
  CHECK(sc.intruders().size() == 1);
  CHECK(sc.intruders()[0].trajectory == std::vector<NodeId>{6, 7, 8});
}

TEST_CASE("baseline selector") {
  CHECK(parse_baseline("none") == BaselineKind::kNone);
  CHECK(parse_baseline("random_patrol") == BaselineKind::kRandomPatrol);
  CHECK(parse_baseline("plain_acs") == BaselineKind::kPlainAcs);
  CHECK_THROWS_AS(parse_baseline("bogus"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"seeds":[1],"baseline":"bogus"})", "test"),
                  ConfigError);
}

TEST_CASE("single run carries metrics and optional baseline") {
  RunConfig cfg = parse_config(
      R"({"seeds":[9],"baseline":"random_patrol",
          "detector":{"n_iter":30,"m":8},
          "scenario":{"trajectories":[[6,7,8,13]],"noise_level":0.0}})",
      "test");
  SensorGraph g = build_graph_from_spec(cfg.graph);
  AttackScenario sc = build_scenario_from_spec(cfg.scenario, g);
  SeedRun run = run_single(cfg, g, sc, 9);
  CHECK(run.seed == 9);
  REQUIRE(run.report.metrics.has_value());
  REQUIRE(run.baseline.has_value());
  REQUIRE(run.baseline->metrics.has_value());
  CHECK(run.baseline->affected_path.empty());
  CHECK(run.report.seed == 9);
}

TEST_CASE("batch reports are deterministic and concurrency independent") {
  RunConfig cfg = parse_config(
      R"({"seeds":[3,1,2],"trace":true,
          "detector":{"n_iter":20,"m":6},
          "scenario":{"trajectories":[[6,7,8]],"noise_level":0.1}})",
      "test");
  BatchOutput parallel1 = run_batch(cfg, true);
  BatchOutput parallel2 = run_batch(cfg, true);
  BatchOutput sequential = run_batch(cfg, false);
  CHECK(parallel1.report_json == parallel2.report_json);
  CHECK(parallel1.report_json == sequential.report_json);
  REQUIRE(parallel1.run_traces.size() == 3);
  REQUIRE(parallel1.tau_traces.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(parallel1.run_traces[k].first == cfg.seeds[k]);
    CHECK(parallel1.run_traces[k].second == sequential.run_traces[k].second);
    CHECK(parallel1.tau_traces[k].second == sequential.tau_traces[k].second);
    CHECK(parallel1.run_traces[k].second.rfind(
              "iteration,robot,node,alerts,tau_max,tau_mean\n", 0) == 0);
    CHECK(parallel1.tau_traces[k].second.rfind("edge,iteration,tau\n", 0) == 0);
  }
}

TEST_CASE("aggregates are seed-permutation invariant") {
  const char* base =
      R"({"seeds":%SEEDS%,
          "detector":{"n_iter":15,"m":6},
          "scenario":{"trajectories":[[6,7,8]],"noise_level":0.2}})";
  std::string a_text(base);
  a_text.replace(a_text.find("%SEEDS%"), 7, "[1,2,3]");
  std::string b_text(base);
  b_text.replace(b_text.find("%SEEDS%"), 7, "[3,1,2]");
  BatchOutput a = run_batch(parse_config(a_text, "test"));
  BatchOutput b = run_batch(parse_config(b_text, "test"));
  json ja = json::parse(a.report_json);
  json jb = json::parse(b.report_json);
  CHECK(ja["aggregate"] == jb["aggregate"]);
  CHECK(ja["runs"] != jb["runs"]);  // per-seed order follows the config
}

TEST_CASE("singleton batch aggregate equals the run metrics") {
  RunConfig cfg = parse_config(
      R"({"seeds":[5],
          "detector":{"n_iter":25,"m":8},
          "scenario":{"trajectories":[[6,7,8,13]],"noise_level":0.0}})",
      "test");
  BatchOutput out = run_batch(cfg);
  json doc = json::parse(out.report_json);
  REQUIRE(doc["runs"].size() == 1);
  const json& entry = doc["runs"][0];
  CHECK(doc["aggregate"]["edge_recall"]["mean"] == entry["metrics"]["edge_recall"]);
  CHECK(doc["aggregate"]["edge_recall"]["min"] == entry["metrics"]["edge_recall"]);
  CHECK(doc["aggregate"]["edge_recall"]["max"] == entry["metrics"]["edge_recall"]);
  CHECK(doc["tool"] == "hsrm");
  CHECK(doc["config"]["detector"]["n_iter"] == 25);
}

TEST_CASE("zero-intruder config is valid and kappa falls back to one") {
  RunConfig cfg = parse_config(
      R"({"seeds":[1],"scenario":{"intruders":0},"detector":{"n_iter":10,"m":4}})",
      "test");
  REQUIRE(cfg.detector.kappa.has_value());
  CHECK(*cfg.detector.kappa == 1.0);
  SensorGraph g = build_graph_from_spec(cfg.graph);
  AttackScenario sc = build_scenario_from_spec(cfg.scenario, g);
  SeedRun run = run_single(cfg, g, sc, 1);
  CHECK(run.report.alerts.empty());
}

TEST_CASE("run report json shape") {
  RunConfig cfg = parse_config(
      R"({"seeds":[2],"trace":true,
          "detector":{"n_iter":12,"m":5},
          "scenario":{"trajectories":[[6,7]],"noise_level":0.0}})",
      "test");
  SensorGraph g = build_graph_from_spec(cfg.graph);
  AttackScenario sc = build_scenario_from_spec(cfg.scenario, g);
  SeedRun run = run_single(cfg, g, sc, 2);
  json doc = json::parse(run_report_json(cfg, run));
  CHECK(doc["seed"] == 2);
  CHECK(doc["alerts"].is_array());
  CHECK(doc["iterations"].size() == 12);
  CHECK(doc["metrics"].contains("detection_latency"));
  CHECK(doc["config"]["trace"] == true);
  CHECK(doc["baseline"].is_null());
}
