#pragma once

// Obstacle-aware node movement. Two route planners share one schedule
// generator:
//   MCM  - greedy: detour via the vertex, nearest the target, of the first
//          obstacle edge in the way, recursively.
//   OAGM - globally shortest obstacle-avoiding polyline, solved over the
//          visibility graph with the hybrid Bellman-Ford/Dijkstra solver.
// Nodes move in groups: leaders pick uniform free destinations, members head
// for a point near their leader's current destination.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "oagm/config.hpp"
#include "oagm/geometry.hpp"
#include "oagm/random.hpp"
#include "oagm/spgraph.hpp"

namespace oagm {

class RoutingFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Route {
  std::vector<Point> waypoints;

  [[nodiscard]] double length() const { return polyline_length(waypoints); }
};

namespace detail {

inline std::string describe(Point p) {
  return "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ")";
}

inline void append_distinct(std::vector<Point>& pts, Point p) {
  if (pts.empty() || pts.back() != p) pts.push_back(p);
}

inline bool on_boundary(Point p, const RectObstacle& r) {
  const bool in_x = p.x >= r.min_corner.x && p.x <= r.max_corner.x;
  const bool in_y = p.y >= r.min_corner.y && p.y <= r.max_corner.y;
  return (in_x && (p.y == r.min_corner.y || p.y == r.max_corner.y)) ||
         (in_y && (p.x == r.min_corner.x || p.x == r.max_corner.x));
}

// Of the corners reachable from boundary point p along one edge of r, the
// one closest to `target` (lexicographic tie-break).
inline Point boundary_step(Point p, const RectObstacle& r, Point target) {
  std::optional<Point> best;
  for (const auto c : r.corners()) {
    if (c == p || (c.x != p.x && c.y != p.y)) continue;
    if (!best || distance(c, target) < distance(*best, target) ||
        (distance(c, target) == distance(*best, target) && c < *best))
      best = c;
  }
  return *best;
}

struct McmBudget {
  std::size_t depth_cap;
  std::size_t calls_left;
};

inline void mcm_recurse(Point s, Point d, const Terrain& terrain, std::size_t depth,
                        McmBudget& budget, std::vector<Point>& out) {
  if (s == d) return;
  const auto hit = first_hit(s, d, terrain);
  if (!hit) {
    append_distinct(out, d);
    return;
  }
  if (depth >= budget.depth_cap || budget.calls_left == 0)
    throw RoutingFailure("MCM: recursion limit reached routing " + describe(s) + " -> " +
                         describe(d));
  --budget.calls_left;
  Point via = closest_edge_vertex(hit->edge, d);
  // A vertex equal to either endpoint makes no progress; take the other one.
  if (via == d || via == s) via = (via == hit->edge.a) ? hit->edge.b : hit->edge.a;
  // From a boundary point the exit edge's vertices may be hidden behind the
  // obstacle itself; walk along the boundary toward d instead.
  const RectObstacle& ob = terrain.obstacles()[hit->edge.obstacle_index];
  if (on_boundary(s, ob) && segment_blocked(s, via, terrain)) via = boundary_step(s, ob, d);
  mcm_recurse(s, via, terrain, depth + 1, budget, out);
  mcm_recurse(via, d, terrain, depth + 1, budget, out);
}

}  // namespace detail

inline std::size_t mcm_depth_cap(const Terrain& terrain) {
  return 4 * terrain.corners().size() + 8;
}

inline Route mcm_route(Point s, Point d, const Terrain& terrain) {
  const std::size_t cap = mcm_depth_cap(terrain);
  detail::McmBudget budget{cap, 64 * cap};
  Route r{{s}};
  detail::mcm_recurse(s, d, terrain, 0, budget, r.waypoints);
  return r;
}

inline Route oagm_route(Point s, Point d, const Terrain& terrain) {
  if (s == d) return Route{{s}};
  const VisibilityGraph vg = build_visibility_graph({s, d}, terrain);
  const ShortestPathResult sp = hybrid_bfd(vg.graph, 0);
  if (sp.negative_cycle || !sp.reachable(1))
    throw RoutingFailure("OAGM: " + detail::describe(d) + " unreachable from " +
                         detail::describe(s));
  Route r;
  for (VertexId v : extract_path(sp, 1)) detail::append_distinct(r.waypoints, vg.vertices[v]);
  return r;
}

inline Route plan_route(MobilityModel model, Point s, Point d, const Terrain& terrain) {
  return model == MobilityModel::kMcm ? mcm_route(s, d, terrain) : oagm_route(s, d, terrain);
}

enum class Role { kLeader, kMember };

struct NodeState {
  std::size_t id = 0;
  Point position;
  std::size_t group_id = 0;
  Role role = Role::kMember;
};

/// Consecutive ids form groups of `group_size`; the first of each is leader.
inline std::vector<NodeState> assign_groups(std::size_t node_count, std::size_t group_size,
                                            const Terrain& terrain, RandomStream& rng) {
  if (group_size < 1) throw std::invalid_argument("assign_groups: group_size must be >= 1");
  std::vector<NodeState> nodes;
  nodes.reserve(node_count);
  for (std::size_t i = 0; i < node_count; ++i) {
    const std::size_t group = i / group_size;
    nodes.push_back({i, sample_free_point(rng, terrain), group,
                     i % group_size == 0 ? Role::kLeader : Role::kMember});
  }
  return nodes;
}

/// Uniform free point in the disc of radius `offset_max` around `leader_dest`.
inline Point member_destination(Point leader_dest, double offset_max, const Terrain& terrain,
                                RandomStream& rng) {
  if (!(offset_max > 0.0)) throw std::invalid_argument("member_destination: offset_max <= 0");
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const double r = offset_max * std::sqrt(rng.uniform());
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    const Point p{leader_dest.x + r * std::cos(theta), leader_dest.y + r * std::sin(theta)};
    if (terrain.is_free(p)) return p;
  }
  throw GeometryError("member_destination: no free point within " + std::to_string(offset_max) +
                      " m of " + detail::describe(leader_dest));
}

struct FlowEndpoints {
  std::size_t src = 0;
  std::size_t dst = 0;

  friend bool operator==(const FlowEndpoints&, const FlowEndpoints&) = default;
};

/// round-half-up(fraction * n) flows (at least one, at most n/2), with all
/// endpoints distinct.
inline std::size_t flow_count(std::size_t node_count, double fraction = 0.05) {
  if (node_count < 2) return 0;
  auto flows = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(node_count) + 0.5));
  return std::clamp<std::size_t>(flows, 1, node_count / 2);
}

inline std::vector<FlowEndpoints> select_flows(std::size_t node_count, RandomStream& rng,
                                               double fraction = 0.05) {
  if (node_count < 2) throw std::invalid_argument("select_flows: need at least 2 nodes");
  const std::size_t flows = flow_count(node_count, fraction);
  std::vector<std::size_t> ids(node_count);
  for (std::size_t i = 0; i < node_count; ++i) ids[i] = i;
  // Partial Fisher-Yates over the first 2*flows slots.
  for (std::size_t i = 0; i < 2 * flows; ++i) {
    const std::size_t j = i + rng.below(node_count - i);
    std::swap(ids[i], ids[j]);
  }
  std::vector<FlowEndpoints> out;
  for (std::size_t f = 0; f < flows; ++f) out.push_back({ids[2 * f], ids[2 * f + 1]});
  return out;
}

struct TimedLeg {
  std::size_t node = 0;
  double depart_time = 0.0;
  Point from;
  Point to;
  double speed = 0.0;

  [[nodiscard]] double arrival_time() const { return depart_time + distance(from, to) / speed; }

  friend bool operator==(const TimedLeg&, const TimedLeg&) = default;
};

/// Per-node piecewise-linear trajectories over [0, duration].
struct MovementSchedule {
  double duration = 0.0;
  std::vector<Point> initial;
  std::vector<std::vector<TimedLeg>> legs;

  MovementSchedule() = default;
  MovementSchedule(double duration_s, std::vector<Point> initial_positions)
      : duration(duration_s), initial(std::move(initial_positions)), legs(initial.size()) {}

  [[nodiscard]] std::size_t node_count() const noexcept { return initial.size(); }

  [[nodiscard]] Point position(std::size_t node, double t) const {
    const auto& ls = legs.at(node);
    auto it = std::upper_bound(ls.begin(), ls.end(), t,
                               [](double time, const TimedLeg& l) { return time < l.depart_time; });
    if (it == ls.begin()) return initial[node];
    const TimedLeg& leg = *std::prev(it);
    const double arrive = leg.arrival_time();
    if (t >= arrive) return leg.to;
    return lerp(leg.from, leg.to, (t - leg.depart_time) / (arrive - leg.depart_time));
  }

  friend bool operator==(const MovementSchedule&, const MovementSchedule&) = default;
};

namespace detail {

// Walks `route` from time t at `speed`, stopping at `horizon`. Returns the
// time and position reached.
inline std::pair<double, Point> walk_route(std::size_t node, const Route& route, double speed,
                                           double t, double horizon,
                                           std::vector<TimedLeg>& out) {
  Point pos = route.waypoints.front();
  for (std::size_t k = 1; k < route.waypoints.size() && t < horizon; ++k) {
    const Point to = route.waypoints[k];
    const double travel = distance(pos, to) / speed;
    if (t + travel > horizon) {
      const Point cut = lerp(pos, to, (horizon - t) / travel);
      if (cut != pos) out.push_back({node, t, pos, cut, speed});
      return {horizon, cut};
    }
    out.push_back({node, t, pos, to, speed});
    t += travel;
    pos = to;
  }
  return {t, pos};
}

// Guards against destinations that coincide with the current position.
inline constexpr int kMaxEmptyTrips = 1000;

}  // namespace detail

struct LeaderDecision {
  double time;
  Point destination;
};

/// Full movement schedule for a scenario. Randomness is drawn from
/// sub-streams of `rng` keyed by purpose and node id, so the two models see
/// identical placements, destinations, and speeds.
inline MovementSchedule generate_mobility(const ScenarioConfig& config, const RandomStream& rng) {
  config.validate();
  const Terrain terrain = config.terrain();
  RandomStream placement = rng.derive("placement");
  const auto nodes = assign_groups(config.node_count, config.group_size, terrain, placement);

  std::vector<Point> initial;
  for (const auto& n : nodes) initial.push_back(n.position);
  MovementSchedule schedule(config.duration, std::move(initial));
  const double vmin = config.v_min();
  const double vmax = config.v_max();
  if (vmax <= 0.0 || config.duration <= 0.0) return schedule;

  auto plan = [&](Point s, Point d) {
    try {
      return plan_route(config.model, s, d, terrain);
    } catch (const RoutingFailure& e) {
      throw RoutingFailure(std::string("generate_mobility: ") + e.what());
    }
  };

  std::vector<std::vector<LeaderDecision>> decisions(nodes.size());
  for (const auto& leader : nodes) {
    if (leader.role != Role::kLeader) continue;
    RandomStream dest_rng = rng.derive("destinations", leader.id);
    RandomStream speed_rng = rng.derive("speeds", leader.id);
    auto& legs = schedule.legs[leader.id];
    double t = 0.0;
    Point pos = leader.position;
    int empty_trips = 0;
    while (t < config.duration) {
      const Point dest = sample_free_point(dest_rng, terrain);
      if (dest == pos) {
        if (++empty_trips > detail::kMaxEmptyTrips) break;
        continue;
      }
      decisions[leader.id].push_back({t, dest});
      const double speed = speed_rng.uniform(vmin, vmax);
      std::tie(t, pos) =
          detail::walk_route(leader.id, plan(pos, dest), speed, t, config.duration, legs);
    }
  }

  for (const auto& member : nodes) {
    if (member.role != Role::kMember) continue;
    const auto& plan_of_leader = decisions[member.group_id * config.group_size];
    if (plan_of_leader.empty()) continue;
    RandomStream dest_rng = rng.derive("member-destinations", member.id);
    RandomStream speed_rng = rng.derive("speeds", member.id);
    auto& legs = schedule.legs[member.id];
    double t = 0.0;
    Point pos = member.position;
    std::size_t k = 0;
    int empty_trips = 0;
    while (t < config.duration) {
      while (k + 1 < plan_of_leader.size() && plan_of_leader[k + 1].time <= t) ++k;
      const double horizon =
          k + 1 < plan_of_leader.size() ? plan_of_leader[k + 1].time : config.duration;
      const Point dest =
          member_destination(plan_of_leader[k].destination, config.member_offset_m, terrain, dest_rng);
      if (dest == pos) {
        if (++empty_trips > detail::kMaxEmptyTrips) break;
        continue;
      }
      const double speed = speed_rng.uniform(vmin, vmax);
      std::tie(t, pos) = detail::walk_route(member.id, plan(pos, dest), speed, t, horizon, legs);
    }
  }
  return schedule;
}

}  // namespace oagm
