#pragma once

// Planar geometry for a rectangular field with axis-aligned rectangular
// obstacles. Obstacle boundaries are traversable; only the open interior
// blocks movement and line of sight.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oagm/random.hpp"
#include "oagm/spgraph.hpp"

namespace oagm {

class GeometryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Segments must penetrate an interior deeper than this (meters) to count as
// blocked. Absorbs rounding in points interpolated along obstacle edges.
inline constexpr double kInteriorMargin = 1e-7;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
  friend auto operator<=>(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline Point lerp(Point a, Point b, double t) {
  return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}

inline double polyline_length(const std::vector<Point>& pts) {
  double total = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) total += distance(pts[i - 1], pts[i]);
  return total;
}

enum class EdgeSide { kLeft = 0, kTop = 1, kRight = 2, kBottom = 3 };

struct RectObstacle {
  Point min_corner;
  Point max_corner;

  /// Corners in order bottom-left, top-left, top-right, bottom-right.
  [[nodiscard]] std::array<Point, 4> corners() const {
    return {{min_corner,
             {min_corner.x, max_corner.y},
             max_corner,
             {max_corner.x, min_corner.y}}};
  }

  /// True when p lies in the open interior shrunk by `margin`.
  [[nodiscard]] bool strictly_contains(Point p, double margin = 0.0) const {
    return p.x > min_corner.x + margin && p.x < max_corner.x - margin &&
           p.y > min_corner.y + margin && p.y < max_corner.y - margin;
  }

  [[nodiscard]] double area() const {
    return (max_corner.x - min_corner.x) * (max_corner.y - min_corner.y);
  }

  friend bool operator==(const RectObstacle&, const RectObstacle&) = default;
};

struct ObstacleEdge {
  std::size_t obstacle_index = 0;
  EdgeSide side = EdgeSide::kLeft;
  Point a;
  Point b;

  friend bool operator==(const ObstacleEdge&, const ObstacleEdge&) = default;
};

inline ObstacleEdge make_edge(const RectObstacle& r, std::size_t index, EdgeSide side) {
  const Point bl = r.min_corner;
  const Point tr = r.max_corner;
  const Point tl{bl.x, tr.y};
  const Point br{tr.x, bl.y};
  switch (side) {
    case EdgeSide::kLeft:
      return {index, side, bl, tl};
    case EdgeSide::kTop:
      return {index, side, tl, tr};
    case EdgeSide::kRight:
      return {index, side, br, tr};
    case EdgeSide::kBottom:
      return {index, side, bl, br};
  }
  throw std::logic_error("make_edge: bad side");
}

inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Rectangular field [0, width] x [0, height] with fixed obstacles.
class Terrain {
 public:
  Terrain(double width, double height, std::vector<RectObstacle> obstacles = {})
      : width_(width), height_(height), obstacles_(std::move(obstacles)) {
    if (!(width_ > 0.0) || !(height_ > 0.0) || !std::isfinite(width_) ||
        !std::isfinite(height_))
      throw GeometryError("terrain dimensions must be positive and finite");
    for (std::size_t i = 0; i < obstacles_.size(); ++i) {
      const auto& o = obstacles_[i];
      const std::string tag = "obstacle " + std::to_string(i);
      if (!is_finite(o.min_corner) || !is_finite(o.max_corner))
        throw GeometryError(tag + ": non-finite corner");
      if (!(o.min_corner.x < o.max_corner.x && o.min_corner.y < o.max_corner.y))
        throw GeometryError(tag + ": must have positive area");
      if (o.min_corner.x < 0.0 || o.min_corner.y < 0.0 || o.max_corner.x > width_ ||
          o.max_corner.y > height_)
        throw GeometryError(tag + ": outside terrain bounds");
      for (std::size_t j = 0; j < i; ++j) {
        const auto& p = obstacles_[j];
        const bool overlap = o.min_corner.x < p.max_corner.x && p.min_corner.x < o.max_corner.x &&
                             o.min_corner.y < p.max_corner.y && p.min_corner.y < o.max_corner.y;
        if (overlap)
          throw GeometryError(tag + ": interior overlaps obstacle " + std::to_string(j));
      }
    }
  }

  [[nodiscard]] double width() const noexcept { return width_; }
  [[nodiscard]] double height() const noexcept { return height_; }
  [[nodiscard]] const std::vector<RectObstacle>& obstacles() const noexcept { return obstacles_; }

  [[nodiscard]] bool in_bounds(Point p) const {
    return p.x >= 0.0 && p.x <= width_ && p.y >= 0.0 && p.y <= height_;
  }

  /// In bounds and not strictly inside any obstacle.
  [[nodiscard]] bool is_free(Point p, double margin = 0.0) const {
    if (!is_finite(p) || !in_bounds(p)) return false;
    for (const auto& o : obstacles_)
      if (o.strictly_contains(p, margin)) return false;
    return true;
  }

  [[nodiscard]] double free_area() const {
    double a = width_ * height_;
    for (const auto& o : obstacles_) a -= o.area();
    return a;
  }

  [[nodiscard]] std::vector<Point> corners() const {
    std::vector<Point> out;
    out.reserve(4 * obstacles_.size());
    for (const auto& o : obstacles_)
      for (const Point& c : o.corners()) out.push_back(c);
    return out;
  }

 private:
  double width_;
  double height_;
  std::vector<RectObstacle> obstacles_;
};

namespace detail {

// Parametric span t in (enter, exit) during which a->b is inside the open
// rectangle shrunk by `margin`, restricted to (0, 1). Axis 0 = x, 1 = y,
// -1 means the bound came from the segment endpoint rather than a side.
struct Span {
  double enter = 0.0;
  double exit = 1.0;
  int enter_axis = -1;
  int exit_axis = -1;
};

inline std::optional<Span> interior_span(Point a, Point b, const RectObstacle& r,
                                         double margin) {
  Span span;
  const double p[2] = {a.x, a.y};
  const double d[2] = {b.x - a.x, b.y - a.y};
  const double lo[2] = {r.min_corner.x + margin, r.min_corner.y + margin};
  const double hi[2] = {r.max_corner.x - margin, r.max_corner.y - margin};
  for (int axis = 0; axis < 2; ++axis) {
    if (d[axis] == 0.0) {
      if (!(p[axis] > lo[axis] && p[axis] < hi[axis])) return std::nullopt;
      continue;
    }
    double t0 = (lo[axis] - p[axis]) / d[axis];
    double t1 = (hi[axis] - p[axis]) / d[axis];
    if (t0 > t1) std::swap(t0, t1);
    if (t0 > span.enter) {
      span.enter = t0;
      span.enter_axis = axis;
    }
    if (t1 < span.exit) {
      span.exit = t1;
      span.exit_axis = axis;
    }
  }
  if (!(span.enter < span.exit)) return std::nullopt;
  return span;
}

inline EdgeSide entry_side(int axis, Point a, Point b) {
  if (axis == 0) return b.x > a.x ? EdgeSide::kLeft : EdgeSide::kRight;
  return b.y > a.y ? EdgeSide::kBottom : EdgeSide::kTop;
}

inline EdgeSide exit_side(int axis, Point a, Point b) {
  if (axis == 0) return b.x > a.x ? EdgeSide::kRight : EdgeSide::kLeft;
  return b.y > a.y ? EdgeSide::kTop : EdgeSide::kBottom;
}

inline double side_coordinate(const RectObstacle& r, EdgeSide side) {
  switch (side) {
    case EdgeSide::kLeft:
      return r.min_corner.x;
    case EdgeSide::kRight:
      return r.max_corner.x;
    case EdgeSide::kBottom:
      return r.min_corner.y;
    case EdgeSide::kTop:
      return r.max_corner.y;
  }
  return 0.0;
}

// Point where a->b crosses the line carrying `side`, snapped onto it.
inline Point crossing_point(Point a, Point b, const RectObstacle& r, EdgeSide side) {
  const double c = side_coordinate(r, side);
  if (side == EdgeSide::kLeft || side == EdgeSide::kRight) {
    const double t = (c - a.x) / (b.x - a.x);
    return {c, a.y + (b.y - a.y) * t};
  }
  const double t = (c - a.y) / (b.y - a.y);
  return {a.x + (b.x - a.x) * t, c};
}

}  // namespace detail

/// True iff the segment a-b passes through the open interior of an obstacle.
/// Running along or touching a boundary does not block.
inline bool segment_blocked(Point a, Point b, const Terrain& terrain) {
  if (a == b) return false;
  for (const auto& o : terrain.obstacles())
    if (detail::interior_span(a, b, o, kInteriorMargin)) return true;
  return false;
}

struct Hit {
  ObstacleEdge edge;
  Point point;
};

/// The obstacle edge through which a->b first enters an interior, with the
/// entry point. When a sits on the boundary of the obstacle it immediately
/// enters, the edge through which the segment leaves that obstacle is
/// returned instead.
inline std::optional<Hit> first_hit(Point a, Point b, const Terrain& terrain) {
  if (a == b) return std::nullopt;
  const double length = distance(a, b);
  std::optional<Hit> best;
  double best_t = std::numeric_limits<double>::infinity();
  const auto& obstacles = terrain.obstacles();
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const auto& o = obstacles[i];
    if (!detail::interior_span(a, b, o, kInteriorMargin)) continue;
    auto span = detail::interior_span(a, b, o, 0.0);
    if (!span) continue;  // unreachable: the shrunk span is a subset
    const bool starts_on_boundary =
        span->enter_axis < 0 || span->enter * length <= kInteriorMargin;
    Hit hit;
    double key;
    if (starts_on_boundary) {
      const EdgeSide side = detail::exit_side(span->exit_axis, a, b);
      hit = {make_edge(o, i, side), detail::crossing_point(a, b, o, side)};
      key = 0.0;
    } else {
      const EdgeSide side = detail::entry_side(span->enter_axis, a, b);
      hit = {make_edge(o, i, side), detail::crossing_point(a, b, o, side)};
      key = span->enter;
    }
    if (key < best_t) {
      best_t = key;
      best = hit;
    }
  }
  return best;
}

/// Endpoint of `edge` nearest to `target`; ties go to the lexicographically
/// smaller endpoint.
inline Point closest_edge_vertex(const ObstacleEdge& edge, Point target) {
  const double da = squared_distance(edge.a, target);
  const double db = squared_distance(edge.b, target);
  if (da < db) return edge.a;
  if (db < da) return edge.b;
  return std::min(edge.a, edge.b);
}

struct VisibilityGraph {
  std::vector<Point> vertices;
  WeightedGraph graph;
};

/// Vertices are `extra_points` (in order) followed by every obstacle corner;
/// each mutually visible pair contributes both directed edges weighted by
/// Euclidean distance.
inline VisibilityGraph build_visibility_graph(const std::vector<Point>& extra_points,
                                              const Terrain& terrain) {
  VisibilityGraph vg;
  for (std::size_t i = 0; i < extra_points.size(); ++i) {
    const Point p = extra_points[i];
    if (!is_finite(p) || !terrain.in_bounds(p))
      throw GeometryError("visibility graph point " + std::to_string(i) + " outside terrain");
    if (!terrain.is_free(p, kInteriorMargin))
      throw GeometryError("visibility graph point " + std::to_string(i) +
                          " lies inside an obstacle");
    vg.vertices.push_back(p);
  }
  for (const Point& c : terrain.corners()) vg.vertices.push_back(c);

  vg.graph = WeightedGraph(vg.vertices.size());
  for (std::size_t i = 0; i < vg.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vg.vertices.size(); ++j) {
      if (segment_blocked(vg.vertices[i], vg.vertices[j], terrain)) continue;
      const double cost = distance(vg.vertices[i], vg.vertices[j]);
      vg.graph.add_edge(i, j, cost);
      vg.graph.add_edge(j, i, cost);
    }
  }
  return vg;
}

inline constexpr int kMaxRejections = 100000;

/// Uniform point over the terrain minus obstacle interiors.
inline Point sample_free_point(RandomStream& rng, const Terrain& terrain) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const Point p{rng.uniform(0.0, terrain.width()), rng.uniform(0.0, terrain.height())};
    if (terrain.is_free(p)) return p;
  }
  throw GeometryError("sample_free_point: no free point found after " +
                      std::to_string(kMaxRejections) + " attempts");
}

}  // namespace oagm
