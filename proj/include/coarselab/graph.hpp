#pragma once

#include <limits>
#include <span>
#include <vector>

#include "coarselab/core.hpp"

namespace coarselab {

struct Edge {
  NodeId a = 0;
  NodeId b = 0;
  double weight = 1.0;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct ShortestPathTree {
  NodeId source = kNoNode;
  std::vector<double> dist;
  /// Predecessor on a shortest path; among equal-length predecessors the
  /// smallest node index wins.
  std::vector<NodeId> pred;

  std::vector<NodeId> path_to(NodeId target) const;
};

/// Undirected graph with positive edge weights in compressed adjacency form.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  /// Symmetrizes `edges`; parallel edges keep the smallest weight.
  WeightedGraph(std::size_t node_count, std::span<const Edge> edges);

  std::size_t size() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const { return targets_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {targets_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::span<const double> weights(NodeId v) const {
    return {weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  ShortestPathTree shortest_path_tree(NodeId source) const;
  std::vector<double> distances_from(NodeId source) const { return shortest_path_tree(source).dist; }

  /// Connected components in order of their smallest node.
  std::vector<std::vector<NodeId>> components() const;

  WeightedGraph scaled(double factor) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> targets_;
  std::vector<double> weights_;
};

/// Reusable Dijkstra state for many point-to-point queries on a large graph.
/// Only touched entries are reset between queries.
class DijkstraWorkspace {
 public:
  explicit DijkstraWorkspace(const WeightedGraph& graph);

  /// Distance from `source` to `target`; returns infinity when it exceeds
  /// `limit` (the search stops as soon as that is certain).
  double distance(NodeId source, NodeId target, double limit = kInfinity);

 private:
  const WeightedGraph* graph_;
  std::vector<double> dist_;
  std::vector<NodeId> touched_;
};

}  // namespace coarselab
