#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hsrm/graph.hpp"

namespace hsrm {

// A candidate solution feeding the global trail update: a walk plus its
// quality score. Quality is an opaque non-negative real here; the detector
// defines it as normalized mean sensed intensity along the walk.
struct Contribution {
  std::vector<NodeId> solution_path;
  double quality = 0.0;
};

// Per-edge stigmergic intensity with baseline tau0 and decay constant q0.
// Values are stored per undirected edge, so tau(i,j) == tau(j,i) by
// construction. Two update rules operate on the field:
//   local:  tau <- q0^2 * tau + (1-q0)^2 * tau0        (one traversed edge)
//   global: tau <- q0^2 * tau + (1-q0)^2 * sum(quality over contributions
//           traversing the edge), applied to every edge from a snapshot.
class PheromoneField {
 public:
  PheromoneField(const SensorGraph& g, double tau0, double q0);

  double tau(EdgeId e) const { return tau_[e]; }
  double tau(NodeId i, NodeId j) const;
  const std::vector<double>& values() const { return tau_; }

  double tau0() const { return tau0_; }
  double q0() const { return q0_; }
  std::size_t edge_count() const { return tau_.size(); }

  void set_tau(EdgeId e, double value);

  void local_update(EdgeId e);
  void local_update(NodeId i, NodeId j);

  void global_update(const std::vector<Contribution>& contributions);

  // Fixed point of the repeated local rule: (1-q0)*tau0/(1+q0).
  double decay_fixed_point() const;

  double max_tau() const;
  double mean_tau() const;

 private:
  const SensorGraph* graph_;
  double tau0_;
  double q0_;
  std::vector<double> tau_;
};

PheromoneField init_field(const SensorGraph& g, double tau0, double q0);

// Appends one `edge,iteration,tau` CSV row per edge.
void append_tau_trace(const PheromoneField& field, std::uint32_t iteration,
                      std::ostream& out);

}  // namespace hsrm
