#include "hsrm/colony.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hsrm {

namespace {

RobotClass classify(double ssl, double q0) {
  return ssl > q0 ? RobotClass::sSSL : RobotClass::hSSL;
}

}  // namespace

Colony split_colony(std::uint32_t m, double q0, std::uint64_t seed) {
  if (m < 1) {
    throw std::invalid_argument("colony: robot count must be >= 1");
  }
  if (q0 < 0.0 || q0 > 1.0) {
    throw std::invalid_argument("colony: q0 must be in [0,1]");
  }
  Rng rng(seed);
  Colony colony;
  colony.robots.resize(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    Robot& r = colony.robots[i];
    r.id = i;
    r.ssl = rng.uniform_double();
    r.klass = classify(r.ssl, q0);
  }
  return colony;
}

std::vector<std::pair<NodeId, double>> transition_probabilities(
    const SensorGraph& g, const PheromoneField& f, const Robot& r, double beta) {
  std::vector<std::pair<NodeId, double>> probs;
  const NodeId i = r.current();
  double total = 0.0;
  for (NodeId u : g.neighbors(i)) {
    if (r.tabu.count(u) != 0) continue;
    const EdgeId e = g.edge_id(i, u);
    const double w = f.tau(e) * std::pow(g.visibility(e), beta);
    probs.emplace_back(u, w);
    total += w;
  }
  if (probs.empty()) return probs;  // dead end, caller decides
  if (total > 0.0) {
    for (auto& [node, w] : probs) w /= total;
  } else {
    // All weights zero (possible only with a zeroed field): fall back to
    // the uniform distribution so the result is still a distribution.
    const double p = 1.0 / static_cast<double>(probs.size());
    for (auto& [node, w] : probs) w = p;
  }
  return probs;
}

NodeId step_sSSL(Robot& r, const std::vector<std::pair<NodeId, double>>& probs,
                 Rng& rng) {
  if (probs.empty()) {
    throw std::invalid_argument("colony: step_sSSL needs a non-empty distribution");
  }
  const double u = rng.uniform_double();
  double cum = 0.0;
  NodeId chosen = probs.back().first;
  for (const auto& [node, p] : probs) {
    cum += p;
    if (u < cum) {
      chosen = node;
      break;
    }
  }
  r.visit(chosen);
  return chosen;
}

bool step_hSSL(const SensorGraph& g, const PheromoneField& f, Robot& r,
               double beta, NodeId* chosen) {
  const NodeId i = r.current();
  bool found = false;
  NodeId best = 0;
  double best_score = 0.0;
  for (NodeId u : g.neighbors(i)) {  // ascending: strict > keeps lowest id on ties
    if (r.tabu.count(u) != 0) continue;
    const EdgeId e = g.edge_id(i, u);
    const double score = f.tau(e) * std::pow(g.visibility(e), beta);
    if (!found || score > best_score) {
      found = true;
      best = u;
      best_score = score;
    }
  }
  if (!found) return false;
  r.visit(best);
  if (chosen != nullptr) *chosen = best;
  return true;
}

void notify(Colony& c, const Robot& reporter, NodeId node) {
  if (reporter.klass != RobotClass::sSSL) {
    throw std::invalid_argument("colony: only sSSL robots may report suspicions");
  }
  auto& queue = c.suspicion_queue;
  queue.erase(std::remove_if(queue.begin(), queue.end(),
                             [node](const SuspicionEntry& e) { return e.node == node; }),
              queue.end());
  queue.push_back({node, reporter.id});
}

void adapt_ssl(Robot& r, bool success, double delta, double q0) {
  if (delta < 0.0) {
    throw std::invalid_argument("colony: delta must be >= 0");
  }
  r.ssl = std::clamp(success ? r.ssl + delta : r.ssl - delta, 0.0, 1.0);
  r.klass = classify(r.ssl, q0);
}

}  // namespace hsrm
