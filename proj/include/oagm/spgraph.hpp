#pragma once

// Single-source cheapest paths over directed graphs whose edge costs may be
// negative: plain Bellman-Ford, Dijkstra, and the hybrid that runs a full
// Dijkstra scan as each Bellman-Ford round.

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oagm {

using VertexId = std::size_t;

struct Edge {
  VertexId from = 0;
  VertexId to = 0;
  double cost = 0.0;
};

/// Directed multigraph with finite real edge costs.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t vertex_count) : vertex_count_(vertex_count) {}

  void add_edge(VertexId from, VertexId to, double cost) {
    if (from >= vertex_count_ || to >= vertex_count_)
      throw std::out_of_range("add_edge: vertex id out of range");
    if (!std::isfinite(cost)) throw std::invalid_argument("add_edge: non-finite cost");
    edges_.push_back({from, to, cost});
  }

  [[nodiscard]] std::size_t vertex_count() const noexcept { return vertex_count_; }
  [[nodiscard]] const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Outgoing edge indices per vertex, in insertion order.
  [[nodiscard]] std::vector<std::vector<std::size_t>> adjacency() const {
    std::vector<std::vector<std::size_t>> out(vertex_count_);
    for (std::size_t i = 0; i < edges_.size(); ++i) out[edges_[i].from].push_back(i);
    return out;
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
};

/// Distances and predecessor tree from one source. An empty `dist` entry
/// means the vertex is unreachable; an empty `parent` entry means it has no
/// predecessor (the source, or unreachable vertices).
struct ShortestPathResult {
  VertexId source = 0;
  std::vector<std::optional<double>> dist;
  std::vector<std::optional<VertexId>> parent;
  std::size_t rounds_used = 0;
  bool negative_cycle = false;

  [[nodiscard]] bool reachable(VertexId v) const { return dist.at(v).has_value(); }
};

namespace detail {

inline ShortestPathResult initialize(const WeightedGraph& g, VertexId s) {
  if (s >= g.vertex_count()) throw std::out_of_range("source vertex out of range");
  ShortestPathResult r;
  r.source = s;
  r.dist.assign(g.vertex_count(), std::nullopt);
  r.parent.assign(g.vertex_count(), std::nullopt);
  r.dist[s] = 0.0;
  return r;
}

// Returns true when d(v) decreased.
inline bool relax(ShortestPathResult& r, const Edge& e) {
  const auto& du = r.dist[e.from];
  if (!du) return false;
  const double candidate = *du + e.cost;
  auto& dv = r.dist[e.to];
  if (!dv || candidate < *dv) {
    dv = candidate;
    r.parent[e.to] = e.from;
    return true;
  }
  return false;
}

inline bool plain_scan(const WeightedGraph& g, ShortestPathResult& r) {
  bool changed = false;
  for (const Edge& e : g.edges()) changed |= relax(r, e);
  return changed;
}

// Scans every vertex with finite d exactly once, always taking the unscanned
// vertex of minimal current d (lowest id on ties). Vertices whose d drops
// after they were scanned wait for the next round.
inline bool dijkstra_scan(const WeightedGraph& g,
                          const std::vector<std::vector<std::size_t>>& adj,
                          ShortestPathResult& r) {
  using Entry = std::pair<double, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> frontier;
  std::vector<bool> scanned(g.vertex_count(), false);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (r.dist[v]) frontier.emplace(*r.dist[v], v);

  bool changed = false;
  while (!frontier.empty()) {
    const auto [du, u] = frontier.top();
    frontier.pop();
    if (scanned[u] || du != *r.dist[u]) continue;
    scanned[u] = true;
    for (std::size_t idx : adj[u]) {
      const Edge& e = g.edges()[idx];
      if (relax(r, e)) {
        changed = true;
        if (!scanned[e.to]) frontier.emplace(*r.dist[e.to], e.to);
      }
    }
  }
  return changed;
}

// Repeats `scan` until a round leaves d unchanged. A change in round |V|
// means a negative cycle is reachable from the source.
template <typename Scan>
ShortestPathResult iterate_rounds(const WeightedGraph& g, VertexId s, Scan&& scan) {
  ShortestPathResult r = initialize(g, s);
  const std::size_t max_rounds = g.vertex_count();
  for (std::size_t round = 1;; ++round) {
    const bool changed = scan(r);
    r.rounds_used = round;
    if (!changed) return r;
    if (round == max_rounds) {
      r.negative_cycle = true;
      return r;
    }
  }
}

}  // namespace detail

inline ShortestPathResult bellman_ford(const WeightedGraph& g, VertexId s) {
  return detail::iterate_rounds(
      g, s, [&](ShortestPathResult& r) { return detail::plain_scan(g, r); });
}

/// Single Dijkstra scan. Requires non-negative costs.
inline ShortestPathResult dijkstra(const WeightedGraph& g, VertexId s) {
  for (const Edge& e : g.edges())
    if (e.cost < 0.0)
      throw std::invalid_argument("dijkstra: negative edge cost " + std::to_string(e.cost) +
                                  " on " + std::to_string(e.from) + "->" +
                                  std::to_string(e.to));
  ShortestPathResult r = detail::initialize(g, s);
  detail::dijkstra_scan(g, g.adjacency(), r);
  r.rounds_used = 1;
  return r;
}

/// Bellman-Ford whose every round is a Dijkstra scan. Exact with negative
/// costs; without a reachable negative cycle it stops after the first round
/// that changes nothing, which for graphs with few negative edges on their
/// cheapest paths is far sooner than plain Bellman-Ford.
inline ShortestPathResult hybrid_bfd(const WeightedGraph& g, VertexId s) {
  const auto adj = g.adjacency();
  return detail::iterate_rounds(
      g, s, [&](ShortestPathResult& r) { return detail::dijkstra_scan(g, adj, r); });
}

/// Walks the predecessor tree from `v` back to the source.
inline std::vector<VertexId> extract_path(const ShortestPathResult& r, VertexId v) {
  if (r.negative_cycle) throw std::logic_error("extract_path: negative cycle present");
  if (v >= r.dist.size()) throw std::out_of_range("extract_path: vertex out of range");
  if (!r.dist[v]) throw std::invalid_argument("extract_path: vertex " + std::to_string(v) +
                                              " is unreachable");
  std::vector<VertexId> path{v};
  while (path.back() != r.source) {
    const auto& p = r.parent[path.back()];
    if (!p || path.size() > r.dist.size())
      throw std::logic_error("extract_path: broken predecessor tree");
    path.push_back(*p);
  }
  return {path.rbegin(), path.rend()};
}

}  // namespace oagm
