#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hsrm/detector.hpp"
#include "hsrm/errors.hpp"
#include "hsrm/graph.hpp"
#include "hsrm/metrics.hpp"
#include "hsrm/scenario.hpp"

namespace hsrm {

enum class GraphKind { kGrid, kRandom, kExplicit };

struct GraphSpec {
  GraphKind kind = GraphKind::kGrid;
  NodeId rows = 5;
  NodeId cols = 5;
  NodeId n = 25;
  double density = 0.2;
  std::uint64_t seed = 1;
  std::vector<EdgeSpec> edges;
};

struct ScenarioSpec {
  std::uint32_t intruders = 1;
  std::uint32_t walk_len = 6;
  double base_intensity = 5.0;
  double noise_level = 0.1;
  std::uint64_t seed = 7;
  std::optional<std::uint32_t> horizon;  // default: detector n_iter
  std::optional<double> threshold;       // default: detector t_c
  std::vector<std::vector<NodeId>> trajectories;  // explicit walks, optional
};

enum class BaselineKind { kNone, kRandomPatrol, kPlainAcs };

BaselineKind parse_baseline(std::string_view name);  // throws ConfigError
std::string_view baseline_name(BaselineKind kind);

struct RunConfig {
  GraphSpec graph;
  ScenarioSpec scenario;
  DetectorConfig detector;
  BaselineKind baseline = BaselineKind::kNone;
  std::vector<std::uint64_t> seeds;
  std::string out_dir = "out";
  bool trace = false;
};

// Parses, validates and fully materializes a config: after a successful
// load every derived default (horizon, threshold, tour_len, theta_report,
// kappa, evaporation) carries its concrete value. Unknown fields are
// rejected. Throws ConfigError.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& text, std::string_view origin);

// Template configuration with every documented default spelled out.
std::string config_template_json();

SensorGraph build_graph_from_spec(const GraphSpec& spec);
AttackScenario build_scenario_from_spec(const ScenarioSpec& spec,
                                        const SensorGraph& g);

struct SeedRun {
  std::uint64_t seed = 0;
  DetectionReport report;                    // metrics filled
  std::optional<DetectionReport> baseline;   // metrics filled when selected
  std::string run_trace_csv;                 // when tracing
  std::string tau_trace_csv;                 // when tracing
};

SeedRun run_single(const RunConfig& cfg, const SensorGraph& g,
                   const AttackScenario& sc, std::uint64_t seed);

// Reference detectors sharing the report shape of the full algorithm.
DetectionReport baseline_random_patrol(const SensorGraph& g,
                                       const AttackScenario& sc,
                                       const DetectorConfig& cfg);
DetectionReport baseline_plain_acs(const SensorGraph& g, const AttackScenario& sc,
                                   const DetectorConfig& cfg);

struct BatchOutput {
  std::string report_json;  // canonical batch report text
  std::vector<std::pair<std::uint64_t, std::string>> run_traces;
  std::vector<std::pair<std::uint64_t, std::string>> tau_traces;
};

// Runs every seed (concurrently when `parallel`; output is byte-identical
// either way) and assembles the batch report.
BatchOutput run_batch(const RunConfig& cfg, bool parallel = true);

// Report for a single seed, same envelope as one batch entry.
std::string run_report_json(const RunConfig& cfg, const SeedRun& run);

// Writes batch_report.json plus optional per-seed trace CSVs into dir.
void write_batch_outputs(const BatchOutput& out, const std::filesystem::path& dir);

}  // namespace hsrm
