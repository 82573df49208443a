#include "hsrm/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hsrm/version.hpp"

namespace hsrm {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

std::string quote_arg(std::string_view s) { return "'" + std::string(s) + "'"; }

void require_object(const json& value, const char* section) {
  if (!value.is_object()) {
    fail(std::string(section) + " must be a JSON object");
  }
}

void reject_unknown_fields(const json& obj, const char* section,
                           std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return it.key() == k; });
    if (!known) {
      fail("unknown field " + quote_arg(it.key()) + " in " + section);
    }
  }
}

const json* find_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_double(const json& v, const std::string& name) {
  if (!v.is_number()) fail(name + " must be a number");
  return v.get<double>();
}

std::uint64_t as_u64(const json& v, const std::string& name) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  fail(name + " must be a non-negative integer");
}

std::uint32_t as_u32(const json& v, const std::string& name) {
  const std::uint64_t raw = as_u64(v, name);
  if (raw > 0xFFFFFFFFull) fail(name + " is out of range");
  return static_cast<std::uint32_t>(raw);
}

bool as_bool(const json& v, const std::string& name) {
  if (!v.is_boolean()) fail(name + " must be a boolean");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& name) {
  if (!v.is_string()) fail(name + " must be a string");
  return v.get<std::string>();
}

GraphSpec parse_graph(const json& obj) {
  require_object(obj, "graph");
  reject_unknown_fields(obj, "graph",
                        {"kind", "rows", "cols", "n", "density", "seed", "edges"});
  GraphSpec spec;
  if (const json* v = find_field(obj, "kind")) {
    const std::string kind = as_string(*v, "graph.kind");
    if (kind == "grid") {
      spec.kind = GraphKind::kGrid;
    } else if (kind == "random") {
      spec.kind = GraphKind::kRandom;
    } else if (kind == "explicit") {
      spec.kind = GraphKind::kExplicit;
    } else {
      fail("graph.kind must be one of \"grid\", \"random\", \"explicit\", got " +
           quote_arg(kind));
    }
  }
  if (const json* v = find_field(obj, "rows")) spec.rows = as_u32(*v, "graph.rows");
  if (const json* v = find_field(obj, "cols")) spec.cols = as_u32(*v, "graph.cols");
  if (const json* v = find_field(obj, "n")) spec.n = as_u32(*v, "graph.n");
  if (const json* v = find_field(obj, "density")) {
    spec.density = as_double(*v, "graph.density");
  }
  if (const json* v = find_field(obj, "seed")) spec.seed = as_u64(*v, "graph.seed");
  if (const json* v = find_field(obj, "edges")) {
    if (!v->is_array()) fail("graph.edges must be an array");
    for (std::size_t k = 0; k < v->size(); ++k) {
      const json& e = (*v)[k];
      const std::string name = "graph.edges[" + std::to_string(k) + "]";
      if (!e.is_array() || e.size() < 2 || e.size() > 3) {
        fail(name + " must be [i, j] or [i, j, distance]");
      }
      EdgeSpec edge;
      edge.i = as_u32(e[0], name + "[0]");
      edge.j = as_u32(e[1], name + "[1]");
      edge.distance = e.size() == 3 ? as_double(e[2], name + "[2]") : 1.0;
      if (edge.i == edge.j) fail(name + " is a self-loop");
      if (!(edge.distance > 0.0)) fail(name + " needs a positive distance");
      spec.edges.push_back(edge);
    }
  }
  switch (spec.kind) {
    case GraphKind::kGrid:
      if (spec.rows < 1 || spec.cols < 1 || spec.rows * spec.cols < 2) {
        fail("graph: grid needs rows*cols >= 2");
      }
      spec.n = spec.rows * spec.cols;
      break;
    case GraphKind::kRandom:
      if (find_field(obj, "n") == nullptr) {
        fail("graph.n is required when graph.kind is \"random\"");
      }
      break;
    case GraphKind::kExplicit:
      if (find_field(obj, "n") == nullptr) {
        fail("graph.n is required when graph.kind is \"explicit\"");
      }
      if (spec.edges.empty()) {
        fail("graph.edges is required when graph.kind is \"explicit\"");
      }
      break;
  }
  return spec;
}

ScenarioSpec parse_scenario(const json& obj) {
  require_object(obj, "scenario");
  reject_unknown_fields(obj, "scenario",
                        {"intruders", "walk_len", "base_intensity", "noise_level",
                         "seed", "horizon", "threshold", "trajectories"});
  ScenarioSpec spec;
  const json* trajectories = find_field(obj, "trajectories");
  if (trajectories != nullptr) {
    if (find_field(obj, "intruders") != nullptr) {
      fail("scenario.trajectories and scenario.intruders are mutually exclusive");
    }
    if (find_field(obj, "walk_len") != nullptr) {
      fail("scenario.trajectories and scenario.walk_len are mutually exclusive");
    }
    if (!trajectories->is_array() || trajectories->empty()) {
      fail("scenario.trajectories must be a non-empty array of walks");
    }
    for (std::size_t k = 0; k < trajectories->size(); ++k) {
      const json& walk = (*trajectories)[k];
      const std::string name = "scenario.trajectories[" + std::to_string(k) + "]";
      if (!walk.is_array() || walk.empty()) {
        fail(name + " must be a non-empty array of node ids");
      }
      std::vector<NodeId> nodes;
      for (std::size_t p = 0; p < walk.size(); ++p) {
        nodes.push_back(as_u32(walk[p], name + "[" + std::to_string(p) + "]"));
      }
      spec.trajectories.push_back(std::move(nodes));
    }
    spec.intruders = static_cast<std::uint32_t>(spec.trajectories.size());
  } else {
    if (const json* v = find_field(obj, "intruders")) {
      spec.intruders = as_u32(*v, "scenario.intruders");
    }
    if (const json* v = find_field(obj, "walk_len")) {
      spec.walk_len = as_u32(*v, "scenario.walk_len");
      if (spec.walk_len < 1) fail("scenario.walk_len must be >= 1");
    }
  }
  if (const json* v = find_field(obj, "base_intensity")) {
    spec.base_intensity = as_double(*v, "scenario.base_intensity");
  }
  if (const json* v = find_field(obj, "noise_level")) {
    spec.noise_level = as_double(*v, "scenario.noise_level");
  }
  if (const json* v = find_field(obj, "seed")) {
    spec.seed = as_u64(*v, "scenario.seed");
  }
  if (const json* v = find_field(obj, "horizon")) {
    spec.horizon = as_u32(*v, "scenario.horizon");
  }
  if (const json* v = find_field(obj, "threshold")) {
    spec.threshold = as_double(*v, "scenario.threshold");
  }
  if (!std::isfinite(spec.base_intensity) ||
      (spec.intruders > 0 && !(spec.base_intensity > 0.0))) {
    fail("scenario.base_intensity must be > 0");
  }
  if (!std::isfinite(spec.noise_level) || spec.noise_level < 0.0) {
    fail("scenario.noise_level must be >= 0");
  }
  if (spec.threshold && (!std::isfinite(*spec.threshold) || *spec.threshold < 0.0)) {
    fail("scenario.threshold must be >= 0");
  }
  return spec;
}

DetectorConfig parse_detector(const json& obj) {
  require_object(obj, "detector");
  reject_unknown_fields(obj, "detector",
                        {"m", "n_iter", "beta", "q0", "tau0", "t_c", "seed",
                         "tour_len", "delta", "theta_report", "rho", "mu", "kappa",
                         "evaporation"});
  DetectorConfig cfg;
  if (const json* v = find_field(obj, "m")) cfg.m = as_u32(*v, "detector.m");
  if (const json* v = find_field(obj, "n_iter")) {
    cfg.n_iter = as_u32(*v, "detector.n_iter");
  }
  if (const json* v = find_field(obj, "beta")) cfg.beta = as_double(*v, "detector.beta");
  if (const json* v = find_field(obj, "q0")) cfg.q0 = as_double(*v, "detector.q0");
  if (const json* v = find_field(obj, "tau0")) cfg.tau0 = as_double(*v, "detector.tau0");
  if (const json* v = find_field(obj, "t_c")) cfg.t_c = as_double(*v, "detector.t_c");
  if (const json* v = find_field(obj, "seed")) cfg.seed = as_u64(*v, "detector.seed");
  if (const json* v = find_field(obj, "tour_len")) {
    cfg.tour_len = as_u32(*v, "detector.tour_len");
  }
  if (const json* v = find_field(obj, "delta")) cfg.delta = as_double(*v, "detector.delta");
  if (const json* v = find_field(obj, "theta_report")) {
    cfg.theta_report = as_double(*v, "detector.theta_report");
  }
  if (const json* v = find_field(obj, "rho")) cfg.rho = as_double(*v, "detector.rho");
  if (const json* v = find_field(obj, "mu")) cfg.mu = as_double(*v, "detector.mu");
  if (const json* v = find_field(obj, "kappa")) {
    cfg.kappa = as_double(*v, "detector.kappa");
  }
  if (const json* v = find_field(obj, "evaporation")) {
    cfg.evaporation = as_double(*v, "detector.evaporation");
  }
  return cfg;
}

// Fills every optional with the value it would otherwise fall back to, so
// the echoed config is complete and re-runnable verbatim.
void materialize_defaults(RunConfig& cfg) {
  if (!cfg.scenario.horizon) cfg.scenario.horizon = cfg.detector.n_iter;
  if (!cfg.scenario.threshold) cfg.scenario.threshold = cfg.detector.t_c;
  if (cfg.detector.tour_len == 0) {
    cfg.detector.tour_len = cfg.detector.effective_tour_len(cfg.graph.n);
  }
  if (!cfg.detector.theta_report) {
    cfg.detector.theta_report = cfg.detector.effective_theta_report();
  }
  if (!cfg.detector.evaporation) {
    cfg.detector.evaporation = cfg.detector.effective_evaporation();
  }
  if (!cfg.detector.kappa) {
    cfg.detector.kappa = cfg.scenario.intruders > 0 ? cfg.scenario.base_intensity : 1.0;
  }
}

void cross_validate(const RunConfig& cfg) {
  try {
    cfg.detector.validate();
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  if (*cfg.scenario.horizon < cfg.detector.n_iter) {
    fail("scenario.horizon (" + std::to_string(*cfg.scenario.horizon) +
         ") must cover detector.n_iter (" + std::to_string(cfg.detector.n_iter) + ")");
  }
  if (cfg.seeds.empty()) fail("seeds must list at least one seed");
}

json graph_json(const GraphSpec& spec) {
  json o = json::object();
  switch (spec.kind) {
    case GraphKind::kGrid:
      o["kind"] = "grid";
      o["rows"] = spec.rows;
      o["cols"] = spec.cols;
      break;
    case GraphKind::kRandom:
      o["kind"] = "random";
      o["n"] = spec.n;
      o["density"] = spec.density;
      o["seed"] = spec.seed;
      break;
    case GraphKind::kExplicit: {
      o["kind"] = "explicit";
      o["n"] = spec.n;
      json edges = json::array();
      for (const EdgeSpec& e : spec.edges) {
        edges.push_back(json::array({e.i, e.j, e.distance}));
      }
      o["edges"] = std::move(edges);
      break;
    }
  }
  return o;
}

json scenario_json(const ScenarioSpec& spec) {
  json o = json::object();
  if (!spec.trajectories.empty()) {
    o["trajectories"] = spec.trajectories;
  } else {
    o["intruders"] = spec.intruders;
    o["walk_len"] = spec.walk_len;
  }
  o["base_intensity"] = spec.base_intensity;
  o["noise_level"] = spec.noise_level;
  o["seed"] = spec.seed;
  if (spec.horizon) o["horizon"] = *spec.horizon;
  if (spec.threshold) o["threshold"] = *spec.threshold;
  return o;
}

json detector_json(const DetectorConfig& cfg) {
  json o = json::object();
  o["m"] = cfg.m;
  o["n_iter"] = cfg.n_iter;
  o["beta"] = cfg.beta;
  o["q0"] = cfg.q0;
  o["tau0"] = cfg.tau0;
  o["t_c"] = cfg.t_c;
  o["seed"] = cfg.seed;
  o["tour_len"] = cfg.tour_len;
  o["delta"] = cfg.delta;
  o["theta_report"] = cfg.effective_theta_report();
  o["rho"] = cfg.rho;
  o["mu"] = cfg.mu;
  if (cfg.kappa) o["kappa"] = *cfg.kappa;
  o["evaporation"] = cfg.effective_evaporation();
  return o;
}

json config_json(const RunConfig& cfg) {
  json o = json::object();
  o["graph"] = graph_json(cfg.graph);
  o["scenario"] = scenario_json(cfg.scenario);
  o["detector"] = detector_json(cfg.detector);
  o["baseline"] = std::string(baseline_name(cfg.baseline));
  o["seeds"] = cfg.seeds;
  o["trace"] = cfg.trace;
  return o;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string render_run_trace(const std::vector<RobotTraceRow>& rows) {
  std::string out = "iteration,robot,node,alerts,tau_max,tau_mean\n";
  for (const RobotTraceRow& r : rows) {
    out += std::to_string(r.iteration);
    out += ',';
    out += std::to_string(r.robot);
    out += ',';
    out += std::to_string(r.node);
    out += ',';
    out += std::to_string(r.alerts);
    out += ',';
    out += format_double(r.tau_max);
    out += ',';
    out += format_double(r.tau_mean);
    out += '\n';
  }
  return out;
}

json metrics_json(const Metrics& m) {
  json o = json::object();
  o["edge_recall"] = m.edge_recall;
  o["edge_precision"] = m.edge_precision;
  o["false_alarm_rate"] = m.false_alarm_rate;
  o["detection_latency"] = m.detection_latency ? json(*m.detection_latency) : json(nullptr);
  return o;
}

json report_entry(const DetectionReport& report, bool detailed) {
  json o = json::object();
  o["alert_count"] = report.alerts.size();
  o["affected_path"] = report.affected_path;
  if (report.metrics) o["metrics"] = metrics_json(*report.metrics);
  o["candidate_evaluations"] = report.candidate_evaluations;
  double tau_max = 0.0;
  double tau_sum = 0.0;
  for (double v : report.final_tau) {
    tau_max = std::max(tau_max, v);
    tau_sum += v;
  }
  o["final_tau_max"] = tau_max;
  o["final_tau_mean"] =
      report.final_tau.empty() ? 0.0 : tau_sum / static_cast<double>(report.final_tau.size());
  if (detailed) {
    json alerts = json::array();
    for (const Alert& a : report.alerts) {
      json row = json::object();
      row["node"] = a.node;
      row["iteration"] = a.time;
      row["residual"] = a.residual;
      alerts.push_back(std::move(row));
    }
    o["alerts"] = std::move(alerts);
    json iterations = json::array();
    for (const IterationSummary& s : report.iterations) {
      json row = json::object();
      row["iteration"] = s.iteration;
      row["alerts"] = s.alerts;
      row["tau_max"] = s.tau_max;
      row["tau_mean"] = s.tau_mean;
      row["candidate_evaluations"] = s.candidate_evaluations;
      iterations.push_back(std::move(row));
    }
    o["iterations"] = std::move(iterations);
  }
  return o;
}

// Sample statistics over values sorted ascending, so any seed ordering in
// the config produces identical bytes.
json stats_json(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  json o = json::object();
  const double sum = std::accumulate(values.begin(), values.end(), 0.0);
  o["mean"] = values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  o["min"] = values.empty() ? 0.0 : values.front();
  o["max"] = values.empty() ? 0.0 : values.back();
  return o;
}

json aggregate_json(const std::vector<const DetectionReport*>& reports) {
  std::vector<double> recall;
  std::vector<double> precision;
  std::vector<double> false_alarm;
  std::vector<double> alerts;
  std::vector<double> latencies;
  std::size_t never = 0;
  for (const DetectionReport* r : reports) {
    if (r->metrics) {
      recall.push_back(r->metrics->edge_recall);
      precision.push_back(r->metrics->edge_precision);
      false_alarm.push_back(r->metrics->false_alarm_rate);
      if (r->metrics->detection_latency) {
        latencies.push_back(static_cast<double>(*r->metrics->detection_latency));
      } else {
        ++never;
      }
    }
    alerts.push_back(static_cast<double>(r->alerts.size()));
  }
  json o = json::object();
  o["edge_recall"] = stats_json(recall);
  o["edge_precision"] = stats_json(precision);
  o["false_alarm_rate"] = stats_json(false_alarm);
  o["alert_count"] = stats_json(alerts);
  json lat = json::object();
  lat["finite_count"] = latencies.size();
  lat["never_count"] = never;
  if (latencies.empty()) {
    lat["mean"] = nullptr;
    lat["min"] = nullptr;
    lat["max"] = nullptr;
  } else {
    std::sort(latencies.begin(), latencies.end());
    lat["mean"] = std::accumulate(latencies.begin(), latencies.end(), 0.0) /
                  static_cast<double>(latencies.size());
    lat["min"] = latencies.front();
    lat["max"] = latencies.back();
  }
  o["detection_latency"] = std::move(lat);
  return o;
}

}  // namespace

BaselineKind parse_baseline(std::string_view name) {
  if (name == "none") return BaselineKind::kNone;
  if (name == "random_patrol") return BaselineKind::kRandomPatrol;
  if (name == "plain_acs") return BaselineKind::kPlainAcs;
  fail("baseline must be one of \"none\", \"random_patrol\", \"plain_acs\", got " +
       quote_arg(name));
}

std::string_view baseline_name(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::kNone: return "none";
    case BaselineKind::kRandomPatrol: return "random_patrol";
    case BaselineKind::kPlainAcs: return "plain_acs";
  }
  return "none";
}

RunConfig parse_config(const std::string& text, std::string_view origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string(origin) + ": " + e.what());
  }
  require_object(root, "config");
  reject_unknown_fields(root, "config",
                        {"graph", "scenario", "detector", "baseline", "seeds",
                         "out_dir", "trace"});
  RunConfig cfg;
  if (const json* v = find_field(root, "graph")) cfg.graph = parse_graph(*v);
  if (const json* v = find_field(root, "scenario")) cfg.scenario = parse_scenario(*v);
  if (const json* v = find_field(root, "detector")) cfg.detector = parse_detector(*v);
  if (const json* v = find_field(root, "baseline")) {
    cfg.baseline = parse_baseline(as_string(*v, "baseline"));
  }
  const json* seeds = find_field(root, "seeds");
  if (seeds == nullptr || !seeds->is_array() || seeds->empty()) {
    fail("seeds must be a non-empty array of integers");
  }
  for (std::size_t k = 0; k < seeds->size(); ++k) {
    cfg.seeds.push_back(as_u64((*seeds)[k], "seeds[" + std::to_string(k) + "]"));
  }
  for (std::size_t a = 0; a < cfg.seeds.size(); ++a) {
    for (std::size_t b = a + 1; b < cfg.seeds.size(); ++b) {
      if (cfg.seeds[a] == cfg.seeds[b]) {
        fail("duplicate seed " + std::to_string(cfg.seeds[a]) + " in seeds");
      }
    }
  }
  if (const json* v = find_field(root, "out_dir")) {
    cfg.out_dir = as_string(*v, "out_dir");
    if (cfg.out_dir.empty()) fail("out_dir must be non-empty");
  }
  if (const json* v = find_field(root, "trace")) cfg.trace = as_bool(*v, "trace");
  materialize_defaults(cfg);
  cross_validate(cfg);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open config file " + quote_arg(path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string config_template_json() {
  RunConfig cfg;
  cfg.seeds = {1, 2, 3};
  materialize_defaults(cfg);
  return config_json(cfg).dump(2) + "\n";
}

SensorGraph build_graph_from_spec(const GraphSpec& spec) {
  try {
    switch (spec.kind) {
      case GraphKind::kGrid:
        return make_grid_graph(spec.rows, spec.cols);
      case GraphKind::kRandom:
        return make_random_graph(spec.n, spec.density, spec.seed);
      case GraphKind::kExplicit:
        return build_graph(spec.n, spec.edges);
    }
  } catch (const std::exception& e) {
    fail(e.what());
  }
  fail("graph.kind is invalid");
}

AttackScenario build_scenario_from_spec(const ScenarioSpec& spec,
                                        const SensorGraph& g) {
  const std::uint32_t horizon = spec.horizon.value_or(100);
  const double threshold = spec.threshold.value_or(1.0);
  try {
    if (!spec.trajectories.empty()) {
      std::vector<Intruder> intruders;
      for (std::size_t k = 0; k < spec.trajectories.size(); ++k) {
        intruders.push_back(make_intruder(g, static_cast<int>(k),
                                          spec.trajectories[k], spec.base_intensity,
                                          threshold));
      }
      return make_scenario(g, std::move(intruders), horizon, spec.noise_level,
                           spec.seed);
    }
    return generate_scenario(g, spec.intruders, spec.walk_len, spec.base_intensity,
                             spec.noise_level, spec.seed, horizon, threshold);
  } catch (const std::exception& e) {
    fail(e.what());
  }
}

DetectionReport baseline_random_patrol(const SensorGraph& g,
                                       const AttackScenario& sc,
                                       const DetectorConfig& cfg) {
  DetectorConfig c = cfg;
  c.record_trace = false;
  return run(g, sc, c, RunMode::kRandomPatrol);
}

DetectionReport baseline_plain_acs(const SensorGraph& g, const AttackScenario& sc,
                                   const DetectorConfig& cfg) {
  DetectorConfig c = cfg;
  c.record_trace = false;
  return run(g, sc, c, RunMode::kPlainAcs);
}

SeedRun run_single(const RunConfig& cfg, const SensorGraph& g,
                   const AttackScenario& sc, std::uint64_t seed) {
  SeedRun out;
  out.seed = seed;
  DetectorConfig dc = cfg.detector;
  dc.seed = seed;
  dc.record_trace = cfg.trace;
  std::ostringstream tau_trace;
  out.report = run(g, sc, dc, RunMode::kFull, cfg.trace ? &tau_trace : nullptr);
  out.report.metrics = compute_metrics(out.report, sc);
  if (cfg.baseline == BaselineKind::kRandomPatrol) {
    out.baseline = baseline_random_patrol(g, sc, dc);
  } else if (cfg.baseline == BaselineKind::kPlainAcs) {
    out.baseline = baseline_plain_acs(g, sc, dc);
  }
  if (out.baseline) out.baseline->metrics = compute_metrics(*out.baseline, sc);
  if (cfg.trace) {
    out.run_trace_csv = render_run_trace(out.report.trace);
    out.tau_trace_csv = "edge,iteration,tau\n" + tau_trace.str();
  }
  return out;
}

BatchOutput run_batch(const RunConfig& cfg, bool parallel) {
  const SensorGraph g = build_graph_from_spec(cfg.graph);
  const AttackScenario sc = build_scenario_from_spec(cfg.scenario, g);
  std::vector<SeedRun> runs(cfg.seeds.size());
  if (parallel && cfg.seeds.size() > 1) {
    std::vector<std::future<SeedRun>> pending;
    pending.reserve(cfg.seeds.size());
    for (std::uint64_t seed : cfg.seeds) {
      pending.push_back(std::async(std::launch::async, [&cfg, &g, &sc, seed] {
        return run_single(cfg, g, sc, seed);
      }));
    }
    for (std::size_t k = 0; k < pending.size(); ++k) runs[k] = pending[k].get();
  } else {
    for (std::size_t k = 0; k < cfg.seeds.size(); ++k) {
      runs[k] = run_single(cfg, g, sc, cfg.seeds[k]);
    }
  }

  json doc = json::object();
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["config"] = config_json(cfg);
  doc["n_nodes"] = g.node_count();
  doc["n_edges"] = g.edge_count();
  json entries = json::array();
  std::vector<const DetectionReport*> reports;
  std::vector<const DetectionReport*> baselines;
  for (const SeedRun& r : runs) {
    json entry = report_entry(r.report, false);
    json row = json::object();
    row["seed"] = r.seed;
    row.update(entry);
    row["baseline"] = r.baseline ? report_entry(*r.baseline, false) : json(nullptr);
    entries.push_back(std::move(row));
    reports.push_back(&r.report);
    if (r.baseline) baselines.push_back(&*r.baseline);
  }
  doc["runs"] = std::move(entries);
  doc["aggregate"] = aggregate_json(reports);
  doc["baseline_aggregate"] =
      baselines.empty() ? json(nullptr) : aggregate_json(baselines);

  BatchOutput out;
  out.report_json = doc.dump(2) + "\n";
  if (cfg.trace) {
    for (const SeedRun& r : runs) {
      out.run_traces.emplace_back(r.seed, r.run_trace_csv);
      out.tau_traces.emplace_back(r.seed, r.tau_trace_csv);
    }
  }
  return out;
}

std::string run_report_json(const RunConfig& cfg, const SeedRun& run) {
  json doc = json::object();
  doc["tool"] = kToolName;
  doc["version"] = kToolVersion;
  doc["config"] = config_json(cfg);
  doc["n_nodes"] = run.report.n_nodes;
  doc["n_edges"] = run.report.n_edges;
  doc["seed"] = run.seed;
  doc.update(report_entry(run.report, true));
  doc["baseline"] = run.baseline ? report_entry(*run.baseline, true) : json(nullptr);
  return doc.dump(2) + "\n";
}

void write_batch_outputs(const BatchOutput& out, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto write_file = [&](const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail("cannot write " + quote_arg(path.string()));
    f << text;
  };
  write_file(dir / "batch_report.json", out.report_json);
  for (const auto& [seed, csv] : out.run_traces) {
    write_file(dir / ("trace_seed" + std::to_string(seed) + ".csv"), csv);
  }
  for (const auto& [seed, csv] : out.tau_traces) {
    write_file(dir / ("tau_trace_seed" + std::to_string(seed) + ".csv"), csv);
  }
}

}  // namespace hsrm
