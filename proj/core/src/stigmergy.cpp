#include "hsrm/stigmergy.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace hsrm {

PheromoneField::PheromoneField(const SensorGraph& g, double tau0, double q0)
    : graph_(&g), tau0_(tau0), q0_(q0) {
  if (!(tau0 > 0.0) || !std::isfinite(tau0)) {
    throw std::invalid_argument("field: tau0 must be > 0");
  }
  if (q0 < 0.0 || q0 > 1.0) {
    throw std::invalid_argument("field: q0 must be in [0,1]");
  }
  tau_.assign(g.edge_count(), tau0);
}

double PheromoneField::tau(NodeId i, NodeId j) const {
  return tau_[graph_->edge_id(i, j)];
}

void PheromoneField::set_tau(EdgeId e, double value) {
  if (e >= tau_.size()) {
    throw std::out_of_range("field: invalid edge id " + std::to_string(e));
  }
  if (value < 0.0 || !std::isfinite(value)) {
    throw std::invalid_argument("field: tau must be finite and >= 0");
  }
  tau_[e] = value;
}

void PheromoneField::local_update(EdgeId e) {
  if (e >= tau_.size()) {
    throw std::out_of_range("field: invalid edge id " + std::to_string(e));
  }
  const double keep = q0_ * q0_;
  const double gain = (1.0 - q0_) * (1.0 - q0_);
  tau_[e] = keep * tau_[e] + gain * tau0_;
}

void PheromoneField::local_update(NodeId i, NodeId j) {
  local_update(graph_->edge_id(i, j));
}

void PheromoneField::global_update(const std::vector<Contribution>& contributions) {
  // Each contribution adds its quality once per distinct edge it traverses.
  // Deltas are accumulated against the pre-update snapshot, then the decay
  // and reinforcement are applied to every edge at once.
  std::vector<double> delta(tau_.size(), 0.0);
  for (const Contribution& c : contributions) {
    if (c.quality < 0.0 || !std::isfinite(c.quality)) {
      throw std::invalid_argument("field: contribution quality must be >= 0");
    }
    for (const auto& [a, b] : walk_edges(c.solution_path)) {
      if (!graph_->has_edge(a, b)) {
        throw std::invalid_argument("field: contribution path uses edge (" +
                                    std::to_string(a) + "," + std::to_string(b) +
                                    ") not present in the graph");
      }
      delta[graph_->edge_id(a, b)] += c.quality;
    }
  }
  const double keep = q0_ * q0_;
  const double gain = (1.0 - q0_) * (1.0 - q0_);
  for (std::size_t e = 0; e < tau_.size(); ++e) {
    tau_[e] = keep * tau_[e] + gain * delta[e];
  }
}

double PheromoneField::decay_fixed_point() const {
  return (1.0 - q0_) * tau0_ / (1.0 + q0_);
}

double PheromoneField::max_tau() const {
  return tau_.empty() ? 0.0 : *std::max_element(tau_.begin(), tau_.end());
}

double PheromoneField::mean_tau() const {
  if (tau_.empty()) return 0.0;
  double sum = 0.0;
  for (double v : tau_) sum += v;
  return sum / static_cast<double>(tau_.size());
}

PheromoneField init_field(const SensorGraph& g, double tau0, double q0) {
  return PheromoneField(g, tau0, q0);
}

void append_tau_trace(const PheromoneField& field, std::uint32_t iteration,
                      std::ostream& out) {
  char buf[64];
  for (std::size_t e = 0; e < field.edge_count(); ++e) {
    std::snprintf(buf, sizeof(buf), "%.17g", field.tau(static_cast<EdgeId>(e)));
    out << e << ',' << iteration << ',' << buf << '\n';
  }
}

}  // namespace hsrm
