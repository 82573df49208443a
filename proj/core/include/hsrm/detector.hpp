#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "hsrm/colony.hpp"
#include "hsrm/graph.hpp"
#include "hsrm/metrics.hpp"
#include "hsrm/scenario.hpp"
#include "hsrm/stigmergy.hpp"

namespace hsrm {

// All tunables of one detection run. Optional fields fall back to derived
// defaults through the effective_* accessors; the config loader materializes
// them so an echoed configuration is self-contained.
struct DetectorConfig {
  std::uint32_t m = 20;        // robot count
  std::uint32_t n_iter = 100;  // iteration count
  double beta = 2.0;           // stigmergy-vs-visibility weight
  double q0 = 0.5;             // colony-split constant, default evaporation
  double tau0 = 0.1;           // trail baseline
  double t_c = 1.0;            // detection threshold
  std::uint64_t seed = 1;
  std::uint32_t tour_len = 0;  // nodes per tour; 0 = min(n, ceil(sqrt(n)) + 2)
  double delta = 0.05;         // sensitivity adaptation step
  std::optional<double> theta_report;  // suspicion report threshold; default t_c
  double rho = 0.5;            // validation fraction
  double mu = 0.1;             // affected-path margin over the decay level
  std::optional<double> kappa;         // quality normalizer; default max base intensity
  std::optional<double> evaporation;   // trail decay constant; default q0
  bool record_trace = false;   // keep per-robot trace rows in the report

  void validate() const;  // throws std::invalid_argument naming the field

  std::uint32_t effective_tour_len(NodeId n) const;
  double effective_theta_report() const { return theta_report.value_or(t_c); }
  double effective_evaporation() const { return evaporation.value_or(q0); }
  double effective_kappa(const AttackScenario& sc) const;
};

// One threshold crossing at a visited node. residual = intensity - threshold,
// always > 0.
struct Alert {
  NodeId node;
  std::uint32_t time;
  double residual;
};

struct IterationSummary {
  std::uint32_t iteration;
  std::uint32_t alerts;
  double tau_max;
  double tau_mean;
  std::uint64_t candidate_evaluations;
};

struct RobotTraceRow {
  std::uint32_t iteration;
  std::uint32_t robot;
  NodeId node;  // final node of the robot's tour this iteration
  std::uint32_t alerts;
  double tau_max;
  double tau_mean;
};

struct DetectionReport {
  std::vector<NodeId> affected_path;  // empty when nothing rose above decay
  std::vector<Alert> alerts;
  std::vector<double> final_tau;  // by edge id
  std::vector<IterationSummary> iterations;
  std::vector<RobotTraceRow> trace;  // populated when record_trace
  std::optional<Metrics> metrics;    // filled by the eval harness
  std::uint64_t candidate_evaluations = 0;
  NodeId n_nodes = 0;
  std::uint64_t n_edges = 0;
  std::uint64_t seed = 0;
};

// kFull is the hybrid detector. kRandomPatrol freezes the trail field and
// walks uniformly (no stigmergy at all). kPlainAcs keeps the trail dynamics
// but steps every robot probabilistically, with notification and sensitivity
// adaptation disabled.
enum class RunMode { kFull, kRandomPatrol, kPlainAcs };

// Threshold rule: fires when intensity exceeds the threshold, retaining the
// residual; otherwise the perceived intensity resets to zero.
std::pair<bool, double> intruder_choice_rule(double intensity, double threshold);

// Normalized mean sensed intensity along a walk at time t.
double solution_quality(const AttackScenario& sc, const std::vector<NodeId>& path,
                        std::uint32_t t, double kappa);

// True when at least fraction rho of the walk's nodes fire the choice rule.
bool validate_path(const std::vector<NodeId>& path, const AttackScenario& sc,
                   std::uint32_t t, double t_c, double rho);

// Greedy maximal-trail chain over edges whose tau stays above
// floor*(1+mu); floor defaults to the field's decay fixed point. Returns an
// empty path when no edge is distinguishable from pure decay.
std::vector<NodeId> extract_affected_path(const PheromoneField& f,
                                          const SensorGraph& g,
                                          std::uint32_t len_cap, double mu = 0.1,
                                          std::optional<double> floor = std::nullopt);

// Executes the full detection loop; deterministic per (g, sc, cfg, mode).
// When tau_trace is non-null the full trail vector is appended to it as CSV
// rows after every iteration.
DetectionReport run(const SensorGraph& g, const AttackScenario& sc,
                    const DetectorConfig& cfg, RunMode mode = RunMode::kFull,
                    std::ostream* tau_trace = nullptr);

}  // namespace hsrm
