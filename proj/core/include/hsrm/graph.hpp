#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hsrm {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// Undirected edge with canonical node order (first < second).
inline std::pair<NodeId, NodeId> canonical_edge(NodeId i, NodeId j) {
  return i < j ? std::make_pair(i, j) : std::make_pair(j, i);
}

struct EdgeSpec {
  NodeId i;
  NodeId j;
  double distance;
};

// Weighted undirected sensor-network graph. Immutable after construction;
// construction validates no self-loops, no duplicate edges, positive
// distances and connectivity. Visibility of an edge is 1/distance.
class SensorGraph {
 public:
  SensorGraph(NodeId n, const std::vector<EdgeSpec>& edges);

  NodeId node_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }

  // Adjacent nodes in ascending id order. Throws on invalid id.
  const std::vector<NodeId>& neighbors(NodeId i) const;

  bool has_edge(NodeId i, NodeId j) const;
  EdgeId edge_id(NodeId i, NodeId j) const;  // throws if the edge is absent

  double distance(EdgeId e) const { return edges_[e].distance; }
  double visibility(EdgeId e) const { return edges_[e].visibility; }
  double distance(NodeId i, NodeId j) const { return edges_[edge_id(i, j)].distance; }
  double visibility(NodeId i, NodeId j) const { return edges_[edge_id(i, j)].visibility; }

  std::pair<NodeId, NodeId> edge_nodes(EdgeId e) const {
    return {edges_[e].a, edges_[e].b};
  }

  std::size_t max_degree() const;

 private:
  struct Edge {
    NodeId a;  // a < b
    NodeId b;
    double distance;
    double visibility;
  };

  std::uint64_t key(NodeId a, NodeId b) const {
    return static_cast<std::uint64_t>(a) * n_ + b;
  }

  NodeId n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::unordered_map<std::uint64_t, EdgeId> edge_index_;
};

SensorGraph build_graph(NodeId n, const std::vector<EdgeSpec>& edges);

// rows x cols lattice with unit distances; node id = row * cols + col.
SensorGraph make_grid_graph(NodeId rows, NodeId cols);

// Connected random graph: a random spanning tree plus `density` of the
// remaining node pairs, edge distances uniform in [0.5, 1.5).
SensorGraph make_random_graph(NodeId n, double density, std::uint64_t seed);

// Complete graph with unit distances.
SensorGraph make_complete_graph(NodeId n);

// Edges traversed by a walk, as a deduplicated set of canonical pairs.
std::vector<std::pair<NodeId, NodeId>> walk_edges(const std::vector<NodeId>& walk);

}  // namespace hsrm
