#include "coarselab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <utility>

namespace coarselab {

namespace {

using QueueEntry = std::pair<double, NodeId>;
using MinQueue = std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<>>;

}  // namespace

std::vector<NodeId> ShortestPathTree::path_to(NodeId target) const {
  if (target >= dist.size() || !std::isfinite(dist[target])) {
    throw Rejection("target node is unreachable");
  }
  std::vector<NodeId> path{target};
  while (path.back() != source) {
    path.push_back(pred[path.back()]);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

WeightedGraph::WeightedGraph(std::size_t node_count, std::span<const Edge> edges) {
  std::map<std::pair<NodeId, NodeId>, double> unique;
  for (const Edge& e : edges) {
    if (e.a >= node_count || e.b >= node_count) {
      throw Rejection("edge endpoint out of range");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Rejection("edge weights must be finite and strictly positive");
    }
    if (e.a == e.b) continue;
    auto key = std::minmax(e.a, e.b);
    auto [it, inserted] = unique.emplace(key, e.weight);
    if (!inserted) it->second = std::min(it->second, e.weight);
  }

  std::vector<std::size_t> degree(node_count, 0);
  for (const auto& [key, w] : unique) {
    ++degree[key.first];
    ++degree[key.second];
  }
  offsets_.assign(node_count + 1, 0);
  for (std::size_t v = 0; v < node_count; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  targets_.resize(offsets_.back());
  weights_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [key, w] : unique) {
    targets_[fill[key.first]] = key.second;
    weights_[fill[key.first]++] = w;
  }
  for (const auto& [key, w] : unique) {
    targets_[fill[key.second]] = key.first;
    weights_[fill[key.second]++] = w;
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    std::vector<std::pair<NodeId, double>> adj;
    for (std::size_t k = offsets_[v]; k < offsets_[v + 1]; ++k) adj.emplace_back(targets_[k], weights_[k]);
    std::sort(adj.begin(), adj.end());
    for (std::size_t k = 0; k < adj.size(); ++k) {
      targets_[offsets_[v] + k] = adj[k].first;
      weights_[offsets_[v] + k] = adj[k].second;
    }
  }
}

ShortestPathTree WeightedGraph::shortest_path_tree(NodeId source) const {
  const std::size_t n = size();
  if (source >= n) throw Rejection("source node out of range");
  ShortestPathTree tree;
  tree.source = source;
  tree.dist.assign(n, kInfinity);
  tree.pred.assign(n, kNoNode);
  tree.dist[source] = 0.0;
  tree.pred[source] = source;

  MinQueue queue;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > tree.dist[u]) continue;
    auto nbrs = neighbors(u);
    auto ws = weights(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const NodeId v = nbrs[k];
      const double nd = d + ws[k];
      if (nd < tree.dist[v]) {
        tree.dist[v] = nd;
        tree.pred[v] = u;
        queue.emplace(nd, v);
      } else if (nd == tree.dist[v] && u < tree.pred[v] && v != source) {
        tree.pred[v] = u;
      }
    }
  }
  return tree;
}

std::vector<std::vector<NodeId>> WeightedGraph::components() const {
  const std::size_t n = size();
  std::vector<std::size_t> label(n, static_cast<std::size_t>(-1));
  std::vector<std::vector<NodeId>> result;
  for (NodeId start = 0; start < n; ++start) {
    if (label[start] != static_cast<std::size_t>(-1)) continue;
    std::vector<NodeId> members{start};
    label[start] = result.size();
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (NodeId v : neighbors(members[head])) {
        if (label[v] == static_cast<std::size_t>(-1)) {
          label[v] = result.size();
          members.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    result.push_back(std::move(members));
  }
  return result;
}

WeightedGraph WeightedGraph::scaled(double factor) const {
  if (!(factor > 0.0)) throw Rejection("scale factor must be positive");
  WeightedGraph copy = *this;
  for (double& w : copy.weights_) w *= factor;
  return copy;
}

DijkstraWorkspace::DijkstraWorkspace(const WeightedGraph& graph)
    : graph_(&graph), dist_(graph.size(), kInfinity) {}

double DijkstraWorkspace::distance(NodeId source, NodeId target, double limit) {
  for (NodeId v : touched_) dist_[v] = kInfinity;
  touched_.clear();
  if (source == target) return 0.0;

  MinQueue queue;
  dist_[source] = 0.0;
  touched_.push_back(source);
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist_[u]) continue;
    if (u == target) return d;
    if (d > limit) return kInfinity;
    auto nbrs = graph_->neighbors(u);
    auto ws = graph_->weights(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const NodeId v = nbrs[k];
      const double nd = d + ws[k];
      if (nd < dist_[v] && nd <= limit) {
        if (dist_[v] == kInfinity) touched_.push_back(v);
        dist_[v] = nd;
        queue.emplace(nd, v);
      }
    }
  }
  return kInfinity;
}

}  // namespace coarselab
