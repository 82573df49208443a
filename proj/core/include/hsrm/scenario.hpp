#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "hsrm/graph.hpp"

namespace hsrm {

// Ground-truth attacker. `trajectory` is a walk on the graph (consecutive
// nodes adjacent); the intruder patrols it cyclically, so the attack field
// it emits stands for as long as the scenario runs. `tendency` is the
// per-node assignment weight in [0,1]: 1 on trajectory nodes, 0 elsewhere
// unless overridden.
struct Intruder {
  int id = 0;
  std::vector<NodeId> trajectory;
  double base_intensity = 1.0;
  double threshold = 1.0;  // detection threshold associated with this intruder
  std::vector<double> tendency;  // size n

  NodeId position_at(std::uint32_t t) const {
    return trajectory[t % trajectory.size()];
  }
};

// Immutable ground truth: intruders plus the observable attack-intensity
// field. intensity_at is a pure function of (scenario, node, t); observation
// noise is derived from the seed per (node, t), never from call order.
class AttackScenario {
 public:
  AttackScenario(const SensorGraph& g, std::vector<Intruder> intruders,
                 std::uint32_t horizon, double noise_level, std::uint64_t seed);

  double intensity_at(NodeId s, std::uint32_t t) const;

  const std::vector<Intruder>& intruders() const { return intruders_; }
  std::uint32_t horizon() const { return horizon_; }
  double noise_level() const { return noise_level_; }
  std::uint64_t seed() const { return seed_; }
  NodeId node_count() const { return n_; }

  // Largest base intensity over intruders; 0 when there are none.
  double max_base_intensity() const;

 private:
  NodeId n_;
  std::vector<Intruder> intruders_;
  std::uint32_t horizon_;
  double noise_level_;
  std::uint64_t seed_;
  std::uint64_t noise_seed_;
};

// Intruder with default tendency: 1 on trajectory nodes, 0 elsewhere.
Intruder make_intruder(const SensorGraph& g, int id, std::vector<NodeId> trajectory,
                       double base_intensity, double threshold);

AttackScenario make_scenario(const SensorGraph& g, std::vector<Intruder> intruders,
                             std::uint32_t horizon, double noise_level,
                             std::uint64_t seed);

// Seeded random-walk intruders; identical inputs and seed reproduce the
// scenario exactly.
AttackScenario generate_scenario(const SensorGraph& g, std::uint32_t k_intruders,
                                 std::uint32_t walk_len, double base_intensity,
                                 double noise_level, std::uint64_t seed,
                                 std::uint32_t horizon, double threshold);

// Per-intruder sets of traversed edges; evaluation-side only.
std::vector<std::set<std::pair<NodeId, NodeId>>> ground_truth_paths(
    const AttackScenario& sc);

}  // namespace hsrm
