#include <gtest/gtest.h>

#include <cmath>

#include "oagm/geometry.hpp"
#include "oracles.hpp"

using oagm::Point;
using oagm::RectObstacle;
using oagm::Terrain;

namespace {

Terrain default_terrain() { return Terrain(1000, 1000, {RectObstacle{{400, 400}, {600, 600}}}); }

Point random_point(oagm::RandomStream& rng, double w = 1000, double h = 1000) {
  return {rng.uniform(0.0, w), rng.uniform(0.0, h)};
}

}  // namespace

TEST(SegmentBlocked, Examples) {
  const Terrain t = default_terrain();
  EXPECT_FALSE(oagm::segment_blocked({100, 500}, {300, 500}, t));
  EXPECT_TRUE(oagm::segment_blocked({100, 500}, {900, 500}, t));
  EXPECT_FALSE(oagm::segment_blocked({400, 600}, {600, 600}, t));
}

TEST(SegmentBlocked, BoundaryAndCornerContacts) {
  const Terrain t = default_terrain();
  EXPECT_FALSE(oagm::segment_blocked({400, 100}, {400, 900}, t));  // along the left edge
  EXPECT_FALSE(oagm::segment_blocked({300, 500}, {500, 700}, t));  // grazes corner (400,600)
  EXPECT_TRUE(oagm::segment_blocked({400, 400}, {600, 600}, t));   // diagonal
  EXPECT_TRUE(oagm::segment_blocked({400, 600}, {600, 400}, t));
  EXPECT_FALSE(oagm::segment_blocked({500, 500}, {500, 500}, Terrain(1000, 1000, {})));
}

TEST(SegmentBlocked, SymmetricOnRandomPairs) {
  const Terrain t(1000, 1000, {RectObstacle{{400, 400}, {600, 600}}, RectObstacle{{100, 100}, {250, 180}}});
  oagm::RandomStream rng(7);
  for (int i = 0; i < 20000; ++i) {
    const Point a = random_point(rng);
    const Point b = random_point(rng);
    ASSERT_EQ(oagm::segment_blocked(a, b, t), oagm::segment_blocked(b, a, t));
  }
}

TEST(SegmentBlocked, AgreesWithDenseSampling) {
  const Terrain t(1000, 1000, {RectObstacle{{400, 400}, {600, 600}}, RectObstacle{{100, 700}, {300, 900}}});
  oagm::RandomStream rng(11);
  int disagreements_above_resolution = 0;
  for (int i = 0; i < 10000; ++i) {
    const Point a = random_point(rng);
    const Point b = random_point(rng);
    const bool exact = oagm::segment_blocked(a, b, t);
    const bool sampled = oracle::sampled_blocked(a, b, t);
    if (exact == sampled) continue;
    // Sampling misses interior runs shorter than two sample steps.
    const double step = oagm::distance(a, b) / 1000.0;
    if (oracle::interior_run_length(a, b, t) > 2.0 * step) ++disagreements_above_resolution;
    EXPECT_TRUE(exact) << "sampling found an interior point the exact test missed";
  }
  EXPECT_EQ(disagreements_above_resolution, 0);
}

TEST(SegmentBlocked, CornerToCornerCases) {
  // Regular-grid segments through corners, where rounding matters most.
  const Terrain t = default_terrain();
  const double xs[] = {0, 200, 400, 600, 800, 1000};
  for (double x0 : xs)
    for (double y0 : xs)
      for (double x1 : xs)
        for (double y1 : xs) {
          const Point a{x0, y0};
          const Point b{x1, y1};
          ASSERT_EQ(oagm::segment_blocked(a, b, t), oracle::sampled_blocked(a, b, t, 4000))
              << "(" << x0 << "," << y0 << ")-(" << x1 << "," << y1 << ")";
        }
}

TEST(FirstHit, Examples) {
  const Terrain t = default_terrain();
  const auto h = oagm::first_hit({100, 500}, {900, 550}, t);
  ASSERT_TRUE(h);
  EXPECT_EQ(h->edge.side, oagm::EdgeSide::kLeft);
  EXPECT_EQ(h->edge.a, (Point{400, 400}));
  EXPECT_EQ(h->edge.b, (Point{400, 600}));
  EXPECT_NEAR(h->point.x, 400.0, 1e-9);
  EXPECT_NEAR(h->point.y, 518.75, 1e-9);

  EXPECT_FALSE(oagm::first_hit({100, 100}, {300, 100}, t));

  const auto c = oagm::first_hit({400, 600}, {900, 550}, t);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->edge.side, oagm::EdgeSide::kRight);
  EXPECT_EQ(c->edge.a, (Point{600, 400}));
  EXPECT_EQ(c->edge.b, (Point{600, 600}));
  EXPECT_NEAR(c->point.x, 600.0, 1e-9);
  EXPECT_NEAR(c->point.y, 580.0, 1e-9);
}

TEST(FirstHit, EntryPointMatchesSampling) {
  // The first sampled interior point lies just past the reported entry.
  const Terrain t = default_terrain();
  oagm::RandomStream rng(3);
  int checked = 0;
  while (checked < 500) {
    const Point a = random_point(rng);
    const Point b = random_point(rng);
    if (!t.is_free(a)) continue;
    const auto h = oagm::first_hit(a, b, t);
    if (!h) continue;
    const int steps = 20000;
    double first = -1.0;
    for (int k = 1; k < steps && first < 0; ++k) {
      const double s = static_cast<double>(k) / steps;
      if (t.obstacles()[0].strictly_contains(oagm::lerp(a, b, s))) first = s;
    }
    if (first < 0) continue;  // interior run below sampling resolution
    const double step = oagm::distance(a, b) / steps;
    EXPECT_LE(oagm::distance(oagm::lerp(a, b, first), h->point), 2 * step + 1e-9);
    ++checked;
  }
}

TEST(ClosestEdgeVertex, Examples) {
  const RectObstacle r{{400, 400}, {600, 600}};
  const auto left = oagm::make_edge(r, 0, oagm::EdgeSide::kLeft);
  const auto right = oagm::make_edge(r, 0, oagm::EdgeSide::kRight);
  EXPECT_EQ(oagm::closest_edge_vertex(left, {900, 550}), (Point{400, 600}));
  EXPECT_EQ(oagm::closest_edge_vertex(left, {900, 500}), (Point{400, 400}));
  EXPECT_EQ(oagm::closest_edge_vertex(right, {900, 550}), (Point{600, 600}));
}

TEST(VisibilityGraph, DefaultObstacleWithEndpoints) {
  const Terrain t = default_terrain();
  const auto vg = oagm::build_visibility_graph({{100, 500}, {900, 550}}, t);
  ASSERT_EQ(vg.vertices.size(), 6u);
  bool s_to_d = false;
  std::optional<double> s_to_tl;
  for (const auto& e : vg.graph.edges()) {
    if (e.from == 0 && e.to == 1) s_to_d = true;
    if (e.from == 0 && vg.vertices[e.to] == Point{400, 600}) s_to_tl = e.cost;
  }
  EXPECT_FALSE(s_to_d);
  ASSERT_TRUE(s_to_tl);
  EXPECT_NEAR(*s_to_tl, std::sqrt(300.0 * 300 + 100 * 100), 1e-9);

  // Oracle: every unordered pair, tested by sampling.
  std::size_t expected = 0;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j)
      if (!oracle::sampled_blocked(vg.vertices[i], vg.vertices[j], t)) expected += 2;
  EXPECT_EQ(vg.graph.edges().size(), expected);
}

TEST(VisibilityGraph, NoObstacles) {
  const auto vg = oagm::build_visibility_graph({{10, 10}, {20, 20}}, Terrain(1000, 1000, {}));
  ASSERT_EQ(vg.vertices.size(), 2u);
  ASSERT_EQ(vg.graph.edges().size(), 2u);
  EXPECT_NEAR(vg.graph.edges()[0].cost, std::sqrt(200.0), 1e-9);
}

TEST(VisibilityGraph, CornersOnly) {
  const auto vg = oagm::build_visibility_graph({}, default_terrain());
  ASSERT_EQ(vg.vertices.size(), 4u);
  EXPECT_EQ(vg.graph.edges().size(), 8u);  // 4 boundary edges, both directions
  for (const auto& e : vg.graph.edges())
    EXPECT_NEAR(e.cost, 200.0, 1e-9);
}

TEST(VisibilityGraph, EdgesAreUnblockedAndEuclidean) {
  const Terrain t(1000, 1000, {RectObstacle{{400, 400}, {600, 600}}, RectObstacle{{100, 100}, {300, 200}},
                               RectObstacle{{650, 100}, {900, 300}}});
  oagm::RandomStream rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> extra;
    while (extra.size() < 3) {
      const Point p = random_point(rng);
      if (t.is_free(p)) extra.push_back(p);
    }
    const auto vg = oagm::build_visibility_graph(extra, t);
    for (const auto& e : vg.graph.edges()) {
      const Point a = vg.vertices[e.from];
      const Point b = vg.vertices[e.to];
      ASSERT_FALSE(oagm::segment_blocked(a, b, t));
      const double d = oagm::distance(a, b);
      ASSERT_LE(std::abs(e.cost - d), 1e-9 * std::max(1.0, d));
    }
  }
}

TEST(VisibilityGraph, RejectsInteriorPoint) {
  EXPECT_THROW((void)oagm::build_visibility_graph({{500, 500}}, default_terrain()), oagm::GeometryError);
}

TEST(SampleFreePoint, DeterministicAndInBounds) {
  const Terrain t(1000, 1000, {});
  oagm::RandomStream a(42);
  oagm::RandomStream b(42);
  const Point p = oagm::sample_free_point(a, t);
  EXPECT_EQ(p, oagm::sample_free_point(b, t));
  EXPECT_TRUE(t.in_bounds(p));
}

TEST(SampleFreePoint, UniformOverFreeArea) {
  const Terrain t = default_terrain();
  oagm::RandomStream rng(2024);
  const int n = 100000;
  int left = 0;
  for (int i = 0; i < n; ++i) {
    const Point p = oagm::sample_free_point(rng, t);
    ASSERT_TRUE(t.is_free(p));
    if (p.x < 400) ++left;
  }
  EXPECT_NEAR(static_cast<double>(left) / n, 0.4 / 0.96, 0.01);
}

TEST(SampleFreePoint, FullyCoveredTerrainFails) {
  const Terrain t(100, 100, {RectObstacle{{0, 0}, {100, 100}}});
  oagm::RandomStream rng(1);
  EXPECT_THROW((void)oagm::sample_free_point(rng, t), oagm::GeometryError);
}

TEST(Terrain, Validation) {
  EXPECT_THROW(Terrain(0, 10, {}), oagm::GeometryError);
  EXPECT_THROW(Terrain(10, 10, {RectObstacle{{5, 5}, {5, 8}}}), oagm::GeometryError);
  EXPECT_THROW(Terrain(10, 10, {RectObstacle{{5, 5}, {12, 8}}}), oagm::GeometryError);
  EXPECT_THROW(Terrain(10, 10, {RectObstacle{{1, 1}, {5, 5}}, RectObstacle{{4, 4}, {8, 8}}}),
               oagm::GeometryError);
  EXPECT_NO_THROW(Terrain(10, 10, {RectObstacle{{1, 1}, {5, 5}}, RectObstacle{{5, 1}, {8, 5}}}));
  EXPECT_DOUBLE_EQ(default_terrain().free_area(), 960000.0);
}
