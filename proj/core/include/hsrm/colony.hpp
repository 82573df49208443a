#pragma once

#include <cstdint>
#include <unordered_set>
#include <utility>
#include <vector>

#include "hsrm/graph.hpp"
#include "hsrm/rng.hpp"
#include "hsrm/stigmergy.hpp"

namespace hsrm {

// Sensitivity class. A robot whose stigmergic sensitivity level exceeds the
// split constant q0 is an sSSL explorer (probabilistic steps); otherwise it
// is an hSSL exploiter (greedy steps, fed by explorer notifications).
enum class RobotClass { sSSL, hSSL };

struct Robot {
  std::uint32_t id = 0;
  double ssl = 0.0;  // stigmergic sensitivity level in [0,1]
  RobotClass klass = RobotClass::hSSL;
  std::vector<NodeId> path;            // current tour
  std::unordered_set<NodeId> tabu;     // nodes of the current tour

  NodeId current() const { return path.back(); }

  void start_tour(NodeId start) {
    path.assign(1, start);
    tabu.clear();
    tabu.insert(start);
  }

  void visit(NodeId node) {
    path.push_back(node);
    tabu.insert(node);
  }
};

struct SuspicionEntry {
  NodeId node;
  std::uint32_t reporter;
};

struct Colony {
  std::vector<Robot> robots;
  double beta = 2.0;
  std::vector<SuspicionEntry> suspicion_queue;
};

// Class assignment: each robot draws ssl = q ~ Uniform[0,1) from the seeded
// stream and is sSSL iff q > q0.
Colony split_colony(std::uint32_t m, double q0, std::uint64_t seed);

// Normalized transition weights tau * visibility^beta over the unvisited
// neighbors of the robot's current node, in ascending node-id order. Empty
// result signals a dead end.
std::vector<std::pair<NodeId, double>> transition_probabilities(
    const SensorGraph& g, const PheromoneField& f, const Robot& r, double beta);

// Inverse-CDF sample over the candidate distribution; appends the chosen
// node to the robot's tour.
NodeId step_sSSL(Robot& r, const std::vector<std::pair<NodeId, double>>& probs,
                 Rng& rng);

// Greedy argmax of tau * visibility^beta, lowest node id on ties; appends
// the chosen node to the robot's tour. Returns false at a dead end.
bool step_hSSL(const SensorGraph& g, const PheromoneField& f, Robot& r,
               double beta, NodeId* chosen);

// Explorer-to-exploiter channel: records a suspicious node. Each node is
// kept at most once; a repeated report replaces the older entry.
void notify(Colony& c, const Robot& reporter, NodeId node);

// Shifts ssl by +delta on success, -delta on failure, clamped to [0,1], and
// reassigns the class against q0.
void adapt_ssl(Robot& r, bool success, double delta, double q0);

}  // namespace hsrm
