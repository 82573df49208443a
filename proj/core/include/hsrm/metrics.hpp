#pragma once

#include <cstdint>
#include <optional>

namespace hsrm {

class AttackScenario;
struct DetectionReport;

// Evaluation against ground truth. Recall/precision are over undirected
// edge sets; empty sets score 1 by convention (an empty report makes no
// false claim, an empty truth leaves nothing to find). detection_latency is
// the iteration of the first alert; disengaged means no alert ever fired.
struct Metrics {
  double edge_recall = 0.0;
  double edge_precision = 0.0;
  double false_alarm_rate = 0.0;
  std::optional<std::uint32_t> detection_latency;
};

Metrics compute_metrics(const DetectionReport& report, const AttackScenario& sc);

}  // namespace hsrm
