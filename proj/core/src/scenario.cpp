#include "hsrm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hsrm/rng.hpp"

namespace hsrm {

namespace {

void validate_intruder(const SensorGraph& g, const Intruder& intruder) {
  const std::string tag = "intruder " + std::to_string(intruder.id);
  if (intruder.trajectory.empty()) {
    throw std::invalid_argument(tag + ": empty trajectory");
  }
  for (NodeId v : intruder.trajectory) {
    if (v >= g.node_count()) {
      throw std::invalid_argument(tag + ": trajectory node " + std::to_string(v) +
                                  " not in graph");
    }
  }
  for (std::size_t i = 1; i < intruder.trajectory.size(); ++i) {
    if (!g.has_edge(intruder.trajectory[i - 1], intruder.trajectory[i])) {
      throw std::invalid_argument(tag + ": trajectory is not a walk, nodes " +
                                  std::to_string(intruder.trajectory[i - 1]) +
                                  " and " + std::to_string(intruder.trajectory[i]) +
                                  " are not adjacent");
    }
  }
  if (!(intruder.base_intensity > 0.0)) {
    throw std::invalid_argument(tag + ": base_intensity must be > 0");
  }
  if (intruder.threshold < 0.0) {
    throw std::invalid_argument(tag + ": threshold must be >= 0");
  }
  if (intruder.tendency.size() != g.node_count()) {
    throw std::invalid_argument(tag + ": tendency table must cover all nodes");
  }
  for (double a : intruder.tendency) {
    if (a < 0.0 || a > 1.0) {
      throw std::invalid_argument(tag + ": tendency values must be in [0,1]");
    }
  }
}

// One gaussian draw keyed by (seed, node, t). Counter-based so the field is
// a pure function of its inputs.
double noise_sample(std::uint64_t noise_seed, NodeId s, std::uint32_t t,
                    double stddev) {
  std::uint64_t k = noise_seed;
  k = splitmix64(k ^ (static_cast<std::uint64_t>(s) + 0x9E3779B97F4A7C15ull));
  k = splitmix64(k ^ (static_cast<std::uint64_t>(t) + 0xBF58476D1CE4E5B9ull));
  const std::uint64_t r1 = splitmix64(k);
  const std::uint64_t r2 = splitmix64(r1);
  const double u1 = 1.0 - static_cast<double>(r1 >> 11) * 0x1.0p-53;
  const double u2 = static_cast<double>(r2 >> 11) * 0x1.0p-53;
  return stddev * std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace

AttackScenario::AttackScenario(const SensorGraph& g, std::vector<Intruder> intruders,
                               std::uint32_t horizon, double noise_level,
                               std::uint64_t seed)
    : n_(g.node_count()),
      intruders_(std::move(intruders)),
      horizon_(horizon),
      noise_level_(noise_level),
      seed_(seed),
      noise_seed_(derive_seed(seed, 1)) {
  if (horizon_ < 1) {
    throw std::invalid_argument("scenario: horizon must be >= 1");
  }
  if (noise_level_ < 0.0) {
    throw std::invalid_argument("scenario: noise_level must be >= 0");
  }
  for (const Intruder& intruder : intruders_) {
    validate_intruder(g, intruder);
  }
}

double AttackScenario::intensity_at(NodeId s, std::uint32_t t) const {
  if (s >= n_) {
    throw std::out_of_range("scenario: invalid node id " + std::to_string(s));
  }
  if (t >= horizon_) {
    throw std::out_of_range("scenario: time " + std::to_string(t) +
                            " outside horizon " + std::to_string(horizon_));
  }
  double total = 0.0;
  for (const Intruder& intruder : intruders_) {
    total += intruder.base_intensity * intruder.tendency[s];
  }
  if (noise_level_ > 0.0) {
    total += noise_sample(noise_seed_, s, t, noise_level_);
  }
  return std::max(total, 0.0);
}

double AttackScenario::max_base_intensity() const {
  double best = 0.0;
  for (const Intruder& intruder : intruders_) {
    best = std::max(best, intruder.base_intensity);
  }
  return best;
}

Intruder make_intruder(const SensorGraph& g, int id, std::vector<NodeId> trajectory,
                       double base_intensity, double threshold) {
  Intruder intruder;
  intruder.id = id;
  intruder.trajectory = std::move(trajectory);
  intruder.base_intensity = base_intensity;
  intruder.threshold = threshold;
  intruder.tendency.assign(g.node_count(), 0.0);
  for (NodeId v : intruder.trajectory) {
    if (v < g.node_count()) intruder.tendency[v] = 1.0;
  }
  validate_intruder(g, intruder);
  return intruder;
}

AttackScenario make_scenario(const SensorGraph& g, std::vector<Intruder> intruders,
                             std::uint32_t horizon, double noise_level,
                             std::uint64_t seed) {
  return AttackScenario(g, std::move(intruders), horizon, noise_level, seed);
}

AttackScenario generate_scenario(const SensorGraph& g, std::uint32_t k_intruders,
                                 std::uint32_t walk_len, double base_intensity,
                                 double noise_level, std::uint64_t seed,
                                 std::uint32_t horizon, double threshold) {
  if (walk_len < 1) {
    throw std::invalid_argument("scenario: walk_len must be >= 1");
  }
  if (!(base_intensity > 0.0)) {
    throw std::invalid_argument("scenario: base_intensity must be > 0");
  }
  Rng rng(derive_seed(seed, 0));
  std::vector<Intruder> intruders;
  intruders.reserve(k_intruders);
  for (std::uint32_t k = 0; k < k_intruders; ++k) {
    std::vector<NodeId> walk;
    walk.reserve(walk_len);
    walk.push_back(static_cast<NodeId>(rng.uniform_index(g.node_count())));
    while (walk.size() < walk_len) {
      const auto& nbrs = g.neighbors(walk.back());
      walk.push_back(nbrs[rng.uniform_index(nbrs.size())]);
    }
    intruders.push_back(make_intruder(g, static_cast<int>(k), std::move(walk),
                                      base_intensity, threshold));
  }
  return AttackScenario(g, std::move(intruders), horizon, noise_level, seed);
}

std::vector<std::set<std::pair<NodeId, NodeId>>> ground_truth_paths(
    const AttackScenario& sc) {
  std::vector<std::set<std::pair<NodeId, NodeId>>> out;
  out.reserve(sc.intruders().size());
  for (const Intruder& intruder : sc.intruders()) {
    std::set<std::pair<NodeId, NodeId>> edges;
    for (std::size_t i = 1; i < intruder.trajectory.size(); ++i) {
      edges.insert(canonical_edge(intruder.trajectory[i - 1], intruder.trajectory[i]));
    }
    out.push_back(std::move(edges));
  }
  return out;
}

}  // namespace hsrm
