#include "hsrm/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "hsrm/rng.hpp"

namespace hsrm {

namespace {

std::string edge_name(NodeId i, NodeId j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

SensorGraph::SensorGraph(NodeId n, const std::vector<EdgeSpec>& edges) : n_(n) {
  if (n < 2) {
    throw std::invalid_argument("graph: node count must be >= 2, got " +
                                std::to_string(n));
  }
  adjacency_.resize(n);
  edges_.reserve(edges.size());
  for (const EdgeSpec& spec : edges) {
    if (spec.i >= n || spec.j >= n) {
      throw std::invalid_argument("graph: edge " + edge_name(spec.i, spec.j) +
                                  " references a node outside [0," +
                                  std::to_string(n) + ")");
    }
    if (spec.i == spec.j) {
      throw std::invalid_argument("graph: self-loop at node " +
                                  std::to_string(spec.i));
    }
    if (!(spec.distance > 0.0) || !std::isfinite(spec.distance)) {
      throw std::invalid_argument("graph: non-positive distance on edge " +
                                  edge_name(spec.i, spec.j));
    }
    const auto [a, b] = canonical_edge(spec.i, spec.j);
    if (edge_index_.count(key(a, b)) != 0) {
      throw std::invalid_argument("graph: duplicate edge " + edge_name(a, b));
    }
    const EdgeId id = static_cast<EdgeId>(edges_.size());
    edge_index_.emplace(key(a, b), id);
    edges_.push_back({a, b, spec.distance, 1.0 / spec.distance});
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
  }

  // Connectivity check (BFS from node 0).
  std::vector<char> seen(n, 0);
  std::queue<NodeId> frontier;
  frontier.push(0);
  seen[0] = 1;
  NodeId reached = 1;
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : adjacency_[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  if (reached != n) {
    for (NodeId v = 0; v < n; ++v) {
      if (!seen[v]) {
        throw std::invalid_argument("graph: disconnected, node " +
                                    std::to_string(v) +
                                    " is unreachable from node 0");
      }
    }
  }
}

const std::vector<NodeId>& SensorGraph::neighbors(NodeId i) const {
  if (i >= n_) {
    throw std::out_of_range("graph: invalid node id " + std::to_string(i));
  }
  return adjacency_[i];
}

bool SensorGraph::has_edge(NodeId i, NodeId j) const {
  if (i >= n_ || j >= n_ || i == j) return false;
  const auto [a, b] = canonical_edge(i, j);
  return edge_index_.count(key(a, b)) != 0;
}

EdgeId SensorGraph::edge_id(NodeId i, NodeId j) const {
  if (i >= n_ || j >= n_) {
    throw std::out_of_range("graph: invalid node id in edge " + edge_name(i, j));
  }
  const auto [a, b] = canonical_edge(i, j);
  const auto it = edge_index_.find(key(a, b));
  if (it == edge_index_.end()) {
    throw std::out_of_range("graph: no edge " + edge_name(i, j));
  }
  return it->second;
}

std::size_t SensorGraph::max_degree() const {
  std::size_t best = 0;
  for (const auto& nbrs : adjacency_) {
    best = std::max(best, nbrs.size());
  }
  return best;
}

SensorGraph build_graph(NodeId n, const std::vector<EdgeSpec>& edges) {
  return SensorGraph(n, edges);
}

SensorGraph make_grid_graph(NodeId rows, NodeId cols) {
  if (rows < 1 || cols < 1 || static_cast<std::uint64_t>(rows) * cols < 2) {
    throw std::invalid_argument("grid graph: needs at least 2 nodes");
  }
  std::vector<EdgeSpec> edges;
  for (NodeId r = 0; r < rows; ++r) {
    for (NodeId c = 0; c < cols; ++c) {
      const NodeId id = r * cols + c;
      if (c + 1 < cols) edges.push_back({id, id + 1, 1.0});
      if (r + 1 < rows) edges.push_back({id, id + cols, 1.0});
    }
  }
  return SensorGraph(rows * cols, edges);
}

SensorGraph make_random_graph(NodeId n, double density, std::uint64_t seed) {
  if (n < 2) {
    throw std::invalid_argument("random graph: node count must be >= 2");
  }
  if (density < 0.0 || density > 1.0) {
    throw std::invalid_argument("random graph: density must be in [0,1]");
  }
  Rng rng(seed);
  const auto draw_distance = [&rng] { return 0.5 + rng.uniform_double(); };

  std::set<std::pair<NodeId, NodeId>> used;
  std::vector<EdgeSpec> edges;
  // Spanning tree by uniform attachment keeps the graph connected.
  for (NodeId v = 1; v < n; ++v) {
    const NodeId u = static_cast<NodeId>(rng.uniform_index(v));
    used.insert(canonical_edge(u, v));
    edges.push_back({u, v, draw_distance()});
  }
  const std::uint64_t all_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t extra_target = static_cast<std::uint64_t>(
      density * static_cast<double>(all_pairs - (n - 1)));
  std::uint64_t added = 0;
  std::uint64_t attempts = 0;
  while (added < extra_target && attempts < 64 * all_pairs) {
    ++attempts;
    const NodeId a = static_cast<NodeId>(rng.uniform_index(n));
    const NodeId b = static_cast<NodeId>(rng.uniform_index(n));
    if (a == b) continue;
    const auto e = canonical_edge(a, b);
    if (!used.insert(e).second) continue;
    edges.push_back({e.first, e.second, draw_distance()});
    ++added;
  }
  return SensorGraph(n, edges);
}

SensorGraph make_complete_graph(NodeId n) {
  std::vector<EdgeSpec> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      edges.push_back({i, j, 1.0});
    }
  }
  return SensorGraph(n, edges);
}

std::vector<std::pair<NodeId, NodeId>> walk_edges(const std::vector<NodeId>& walk) {
  std::set<std::pair<NodeId, NodeId>> seen;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    seen.insert(canonical_edge(walk[i - 1], walk[i]));
  }
  return {seen.begin(), seen.end()};
}

}  // namespace hsrm
