#include "hsrm/detector.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace hsrm {

void DetectorConfig::validate() const {
  if (m < 1) throw std::invalid_argument("detector: m must be >= 1");
  if (n_iter < 1) throw std::invalid_argument("detector: n_iter must be >= 1");
  if (!(beta > 0.0)) throw std::invalid_argument("detector: beta must be > 0");
  if (q0 < 0.0 || q0 > 1.0) throw std::invalid_argument("detector: q0 must be in [0,1]");
  if (!(tau0 > 0.0)) throw std::invalid_argument("detector: tau0 must be > 0");
  if (t_c < 0.0) throw std::invalid_argument("detector: t_c must be >= 0");
  if (delta < 0.0) throw std::invalid_argument("detector: delta must be >= 0");
  if (theta_report && *theta_report < 0.0) {
    throw std::invalid_argument("detector: theta_report must be >= 0");
  }
  if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("detector: rho must be in [0,1]");
  if (mu < 0.0) throw std::invalid_argument("detector: mu must be >= 0");
  if (kappa && !(*kappa > 0.0)) {
    throw std::invalid_argument("detector: kappa must be > 0");
  }
  if (evaporation && (*evaporation < 0.0 || *evaporation > 1.0)) {
    throw std::invalid_argument("detector: evaporation must be in [0,1]");
  }
}

std::uint32_t DetectorConfig::effective_tour_len(NodeId n) const {
  if (tour_len != 0) return tour_len;
  const auto root = static_cast<std::uint32_t>(
      std::ceil(std::sqrt(static_cast<double>(n))));
  return std::min<std::uint32_t>(n, root + 2);
}

double DetectorConfig::effective_kappa(const AttackScenario& sc) const {
  if (kappa) return *kappa;
  const double base = sc.max_base_intensity();
  return base > 0.0 ? base : 1.0;
}

std::pair<bool, double> intruder_choice_rule(double intensity, double threshold) {
  if (threshold < 0.0) {
    throw std::invalid_argument("choice rule: threshold must be >= 0");
  }
  const double residual = intensity - threshold;
  if (residual > 0.0) return {true, residual};
  return {false, 0.0};
}

double solution_quality(const AttackScenario& sc, const std::vector<NodeId>& path,
                        std::uint32_t t, double kappa) {
  if (path.empty()) {
    throw std::invalid_argument("quality: path must be non-empty");
  }
  if (!(kappa > 0.0)) {
    throw std::invalid_argument("quality: kappa must be > 0");
  }
  double sum = 0.0;
  for (NodeId s : path) sum += sc.intensity_at(s, t);
  return sum / static_cast<double>(path.size()) / kappa;
}

bool validate_path(const std::vector<NodeId>& path, const AttackScenario& sc,
                   std::uint32_t t, double t_c, double rho) {
  if (path.empty()) {
    throw std::invalid_argument("validate: path must be non-empty");
  }
  std::size_t fired = 0;
  for (NodeId s : path) {
    if (intruder_choice_rule(sc.intensity_at(s, t), t_c).first) ++fired;
  }
  return static_cast<double>(fired) / static_cast<double>(path.size()) >= rho;
}

std::vector<NodeId> extract_affected_path(const PheromoneField& f,
                                          const SensorGraph& g,
                                          std::uint32_t len_cap, double mu,
                                          std::optional<double> floor) {
  if (len_cap < 2 || g.edge_count() == 0) return {};
  const double threshold = floor.value_or(f.decay_fixed_point()) * (1.0 + mu);

  // Seed with the globally maximal edge; lexicographic node-pair tie-break.
  EdgeId best_e = 0;
  double best_tau = -1.0;
  for (EdgeId e = 0; e < f.edge_count(); ++e) {
    const double v = f.tau(e);
    if (v > best_tau ||
        (v == best_tau && g.edge_nodes(e) < g.edge_nodes(best_e))) {
      best_e = e;
      best_tau = v;
    }
  }
  if (best_tau < threshold) return {};

  const auto [a, b] = g.edge_nodes(best_e);
  std::deque<NodeId> chain{a, b};
  std::unordered_set<NodeId> visited{a, b};

  while (chain.size() < len_cap) {
    bool have = false;
    double cand_tau = 0.0;
    NodeId cand_node = 0;
    bool cand_back = true;
    const auto consider = [&](NodeId end, bool at_back) {
      for (NodeId u : g.neighbors(end)) {
        if (visited.count(u) != 0) continue;
        const double v = f.tau(g.edge_id(end, u));
        if (v < threshold) continue;
        if (!have || v > cand_tau || (v == cand_tau && u < cand_node)) {
          have = true;
          cand_tau = v;
          cand_node = u;
          cand_back = at_back;
        }
      }
    };
    consider(chain.back(), true);
    consider(chain.front(), false);
    if (!have) break;
    if (cand_back) {
      chain.push_back(cand_node);
    } else {
      chain.push_front(cand_node);
    }
    visited.insert(cand_node);
  }

  if (chain.front() > chain.back()) {
    std::reverse(chain.begin(), chain.end());
  }
  return {chain.begin(), chain.end()};
}

DetectionReport run(const SensorGraph& g, const AttackScenario& sc,
                    const DetectorConfig& cfg, RunMode mode,
                    std::ostream* tau_trace) {
  cfg.validate();
  if (sc.node_count() != g.node_count()) {
    throw std::invalid_argument("run: scenario was built for a different graph");
  }
  if (sc.horizon() < cfg.n_iter) {
    throw std::invalid_argument("run: scenario horizon " +
                                std::to_string(sc.horizon()) +
                                " is shorter than n_iter " +
                                std::to_string(cfg.n_iter));
  }

  const NodeId n = g.node_count();
  const std::uint32_t tour_len = cfg.effective_tour_len(n);
  const double theta_report = cfg.effective_theta_report();
  const double kappa = cfg.effective_kappa(sc);

  PheromoneField field = init_field(g, cfg.tau0, cfg.effective_evaporation());
  Colony colony = split_colony(cfg.m, cfg.q0, derive_seed(cfg.seed, 0));
  colony.beta = cfg.beta;
  Rng rng(derive_seed(cfg.seed, 1));

  const bool trails_active = mode != RunMode::kRandomPatrol;
  const bool hybrid = mode == RunMode::kFull;

  DetectionReport report;
  report.seed = cfg.seed;
  report.n_nodes = n;
  report.n_edges = g.edge_count();

  std::vector<NodeId> uniform_candidates;

  for (std::uint32_t t = 0; t < cfg.n_iter; ++t) {
    const std::uint64_t evals_at_start = report.candidate_evaluations;

    // Placement. Exploiters consume last iteration's suspicion reports
    // round-robin; everyone else starts at a uniformly random node.
    const std::vector<SuspicionEntry> queue = std::move(colony.suspicion_queue);
    colony.suspicion_queue.clear();
    std::size_t queue_cursor = 0;
    for (Robot& r : colony.robots) {
      if (hybrid && r.klass == RobotClass::hSSL && !queue.empty()) {
        r.start_tour(queue[queue_cursor % queue.size()].node);
        ++queue_cursor;
      } else {
        r.start_tour(static_cast<NodeId>(rng.uniform_index(n)));
      }
    }

    std::unordered_set<NodeId> alerted_nodes;  // one alert per node per iteration
    std::vector<std::uint32_t> robot_alerts(colony.robots.size(), 0);

    const auto sense_node = [&](Robot& r, NodeId s) {
      const double intensity = sc.intensity_at(s, t);
      const auto [fired, residual] = intruder_choice_rule(intensity, cfg.t_c);
      if (fired && alerted_nodes.insert(s).second) {
        report.alerts.push_back({s, t, residual});
        ++robot_alerts[r.id];
      }
      if (hybrid && r.klass == RobotClass::sSSL && intensity > theta_report) {
        notify(colony, r, s);
      }
    };

    // Tour construction, robots in id order. Trail updates happen at
    // traversal time; the choice rule runs at every visited node.
    for (Robot& r : colony.robots) {
      sense_node(r, r.current());
      for (std::uint32_t step = 1; step < tour_len; ++step) {
        const NodeId from = r.current();
        NodeId next = 0;
        if (mode == RunMode::kRandomPatrol) {
          uniform_candidates.clear();
          for (NodeId u : g.neighbors(from)) {
            if (r.tabu.count(u) == 0) uniform_candidates.push_back(u);
          }
          report.candidate_evaluations += uniform_candidates.size();
          if (uniform_candidates.empty()) break;
          next = uniform_candidates[rng.uniform_index(uniform_candidates.size())];
          r.visit(next);
        } else if (mode == RunMode::kPlainAcs || r.klass == RobotClass::sSSL) {
          const auto probs = transition_probabilities(g, field, r, cfg.beta);
          report.candidate_evaluations += probs.size();
          if (probs.empty()) break;
          next = step_sSSL(r, probs, rng);
        } else {
          std::size_t candidates = 0;
          for (NodeId u : g.neighbors(from)) {
            if (r.tabu.count(u) == 0) ++candidates;
          }
          report.candidate_evaluations += candidates;
          if (!step_hSSL(g, field, r, cfg.beta, &next)) break;
        }
        if (trails_active) field.local_update(from, next);
        sense_node(r, next);
      }
    }

    // Validation, reinforcement, sensitivity adaptation.
    std::vector<Contribution> contributions;
    std::set<std::pair<NodeId, NodeId>> validated_edges;
    for (const Robot& r : colony.robots) {
      if (validate_path(r.path, sc, t, cfg.t_c, cfg.rho)) {
        contributions.push_back({r.path, solution_quality(sc, r.path, t, kappa)});
        for (const auto& e : walk_edges(r.path)) validated_edges.insert(e);
      }
    }
    if (trails_active && !contributions.empty()) {
      field.global_update(contributions);
    }
    if (hybrid) {
      for (Robot& r : colony.robots) {
        bool success = false;
        for (const auto& e : walk_edges(r.path)) {
          if (validated_edges.count(e) != 0) {
            success = true;
            break;
          }
        }
        adapt_ssl(r, success, cfg.delta, cfg.q0);
      }
    }

    const double tau_max = field.max_tau();
    const double tau_mean = field.mean_tau();
    std::uint32_t iter_alerts = 0;
    for (std::uint32_t c : robot_alerts) iter_alerts += c;
    report.iterations.push_back({t, iter_alerts, tau_max, tau_mean,
                                 report.candidate_evaluations - evals_at_start});
    if (cfg.record_trace) {
      for (const Robot& r : colony.robots) {
        report.trace.push_back(
            {t, r.id, r.current(), robot_alerts[r.id], tau_max, tau_mean});
      }
    }
    if (tau_trace != nullptr) {
      append_tau_trace(field, t, *tau_trace);
    }
  }

  // For a frozen field the whole trail sits at tau0, so tau0 is the level
  // indistinguishable from "no information"; live fields use their decay
  // fixed point.
  const double floor =
      trails_active ? field.decay_fixed_point() : field.tau0();
  report.affected_path = extract_affected_path(field, g, tour_len, cfg.mu, floor);
  report.final_tau = field.values();
  return report;
}

}  // namespace hsrm
