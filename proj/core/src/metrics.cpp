#include "hsrm/metrics.hpp"

#include <set>
#include <stdexcept>
#include <unordered_set>

#include "hsrm/detector.hpp"
#include "hsrm/scenario.hpp"

namespace hsrm {

Metrics compute_metrics(const DetectionReport& report, const AttackScenario& sc) {
  if (report.n_nodes != sc.node_count()) {
    throw std::invalid_argument(
        "metrics: report and scenario reference different graphs");
  }

  std::set<std::pair<NodeId, NodeId>> truth;
  for (const auto& edges : ground_truth_paths(sc)) {
    truth.insert(edges.begin(), edges.end());
  }
  const auto reported_vec = walk_edges(report.affected_path);
  const std::set<std::pair<NodeId, NodeId>> reported(reported_vec.begin(),
                                                     reported_vec.end());
  std::size_t hits = 0;
  for (const auto& e : reported) {
    if (truth.count(e) != 0) ++hits;
  }

  Metrics m;
  m.edge_recall = truth.empty()
                      ? 1.0
                      : static_cast<double>(hits) / static_cast<double>(truth.size());
  m.edge_precision = reported.empty() ? 1.0
                                      : static_cast<double>(hits) /
                                            static_cast<double>(reported.size());

  std::unordered_set<NodeId> truth_nodes;
  for (const Intruder& intruder : sc.intruders()) {
    truth_nodes.insert(intruder.trajectory.begin(), intruder.trajectory.end());
  }
  if (report.alerts.empty()) {
    m.false_alarm_rate = 0.0;
  } else {
    std::size_t off = 0;
    for (const Alert& a : report.alerts) {
      if (truth_nodes.count(a.node) == 0) ++off;
    }
    m.false_alarm_rate =
        static_cast<double>(off) / static_cast<double>(report.alerts.size());
  }

  for (const Alert& a : report.alerts) {
    if (!m.detection_latency || a.time < *m.detection_latency) {
      m.detection_latency = a.time;
    }
  }
  return m;
}

}  // namespace hsrm
