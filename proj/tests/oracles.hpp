#pragma once

// Brute-force reference implementations shared by the unit and acceptance
// tests. Deliberately naive: exhaustive enumeration and dense sampling.

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "oagm/geometry.hpp"
#include "oagm/random.hpp"
#include "oagm/spgraph.hpp"

namespace oracle {

// Samples `steps` interior points of (a, b) and tests each against the open
// obstacle rectangles.
inline bool sampled_blocked(oagm::Point a, oagm::Point b, const oagm::Terrain& terrain,
                            int steps = 1000) {
  for (int k = 1; k < steps; ++k) {
    const double t = static_cast<double>(k) / steps;
    const oagm::Point p{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    for (const auto& r : terrain.obstacles())
      if (r.strictly_contains(p)) return true;
  }
  return false;
}

// Longest run of the segment that lies inside one obstacle interior. Sampling
// at `steps` cannot see runs much shorter than |ab| / steps.
inline double interior_run_length(oagm::Point a, oagm::Point b, const oagm::Terrain& terrain) {
  double best = 0.0;
  for (const auto& r : terrain.obstacles()) {
    double lo = 0.0;
    double hi = 1.0;
    const double d[2] = {b.x - a.x, b.y - a.y};
    const double o[2] = {a.x, a.y};
    const double mn[2] = {r.min_corner.x, r.min_corner.y};
    const double mx[2] = {r.max_corner.x, r.max_corner.y};
    bool empty = false;
    for (int i = 0; i < 2 && !empty; ++i) {
      if (d[i] == 0.0) {
        if (!(o[i] > mn[i] && o[i] < mx[i])) empty = true;
        continue;
      }
      double t0 = (mn[i] - o[i]) / d[i];
      double t1 = (mx[i] - o[i]) / d[i];
      if (t0 > t1) std::swap(t0, t1);
      lo = std::max(lo, t0);
      hi = std::min(hi, t1);
    }
    if (!empty && hi > lo) best = std::max(best, (hi - lo) * oagm::distance(a, b));
  }
  return best;
}

// Every directed simple path from s, cheapest cost per target. Also reports,
// per target, the fewest negative edges over cheapest paths.
struct PathEnumeration {
  std::vector<std::optional<long long>> dist;
  std::vector<int> min_negative_edges;
};

inline PathEnumeration enumerate_simple_paths(std::size_t n,
                                              const std::vector<std::array<long long, 3>>& edges,
                                              std::size_t s) {
  PathEnumeration out{std::vector<std::optional<long long>>(n),
                      std::vector<int>(n, std::numeric_limits<int>::max())};
  std::vector<bool> on_path(n, false);
  std::function<void(std::size_t, long long, int)> walk = [&](std::size_t u, long long cost,
                                                              int negatives) {
    auto& best = out.dist[u];
    if (!best || cost < *best) {
      best = cost;
      out.min_negative_edges[u] = negatives;
    } else if (cost == *best) {
      out.min_negative_edges[u] = std::min(out.min_negative_edges[u], negatives);
    }
    on_path[u] = true;
    for (const auto& e : edges)
      if (static_cast<std::size_t>(e[0]) == u && !on_path[e[1]])
        walk(e[1], cost + e[2], negatives + (e[2] < 0 ? 1 : 0));
    on_path[u] = false;
  };
  walk(s, 0, 0);
  return out;
}

// True when some directed simple cycle with negative total cost is reachable
// from s (exhaustive cycle enumeration).
inline bool reachable_negative_cycle(std::size_t n,
                                     const std::vector<std::array<long long, 3>>& edges,
                                     std::size_t s) {
  const auto reach = enumerate_simple_paths(n, edges, s).dist;
  std::vector<bool> on_path(n, false);
  bool found = false;
  std::function<void(std::size_t, std::size_t, long long)> walk = [&](std::size_t root,
                                                                      std::size_t u,
                                                                      long long cost) {
    if (found) return;
    on_path[u] = true;
    for (const auto& e : edges) {
      if (static_cast<std::size_t>(e[0]) != u) continue;
      const auto v = static_cast<std::size_t>(e[1]);
      if (v == root && cost + e[2] < 0) found = true;
      else if (v > root && !on_path[v]) walk(root, v, cost + e[2]);
    }
    on_path[u] = false;
  };
  for (std::size_t root = 0; root < n && !found; ++root)
    if (reach[root]) walk(root, root, 0);
  return found;
}

inline std::size_t neg_rounds(const PathEnumeration& p) {
  std::size_t worst = 0;
  for (std::size_t v = 0; v < p.dist.size(); ++v)
    if (p.dist[v]) worst = std::max<std::size_t>(worst, p.min_negative_edges[v]);
  return worst;
}

struct RandomGraph {
  std::size_t n = 0;
  std::vector<std::array<long long, 3>> edges;

  [[nodiscard]] oagm::WeightedGraph build() const {
    oagm::WeightedGraph g(n);
    for (const auto& e : edges)
      g.add_edge(static_cast<std::size_t>(e[0]), static_cast<std::size_t>(e[1]),
                 static_cast<double>(e[2]));
    return g;
  }
};

// <= 8 vertices, <= 16 edges, integer costs in [lo, hi].
inline RandomGraph random_graph(oagm::RandomStream& rng, long long lo = -5, long long hi = 10) {
  RandomGraph g;
  g.n = 1 + rng.below(8);
  const std::size_t m = rng.below(17);
  for (std::size_t k = 0; k < m; ++k) {
    const auto u = static_cast<long long>(rng.below(g.n));
    const auto v = static_cast<long long>(rng.below(g.n));
    const long long c = lo + static_cast<long long>(rng.below(static_cast<std::uint64_t>(hi - lo + 1)));
    g.edges.push_back({u, v, c});
  }
  return g;
}

// Shortest s->t length over a visibility graph by exhaustive simple-path
// enumeration (only for a handful of vertices).
inline double exhaustive_shortest(const oagm::VisibilityGraph& vg, std::size_t s, std::size_t t) {
  const std::size_t n = vg.vertices.size();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : vg.graph.edges()) adj[e.from].push_back({e.to, e.cost});
  std::vector<bool> on(n, false);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, double)> walk = [&](std::size_t u, double cost) {
    if (cost >= best) return;
    if (u == t) {
      best = cost;
      return;
    }
    on[u] = true;
    for (const auto& [v, c] : adj[u])
      if (!on[v]) walk(v, cost + c);
    on[u] = false;
  };
  walk(s, 0.0);
  return best;
}

inline bool route_avoids_interiors(const std::vector<oagm::Point>& pts, const oagm::Terrain& terrain) {
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (sampled_blocked(pts[i - 1], pts[i], terrain)) return false;
  return true;
}

}  // namespace oracle
