#include <gtest/gtest.h>

#include "oagm/metrics.hpp"
#include "oagm/random.hpp"

using oagm::FlowTally;

TEST(ComputePdr, Examples) {
  const std::vector<FlowTally> f{{0, 100, 100}, {1, 100, 50}};
  EXPECT_DOUBLE_EQ(oagm::compute_pdr(f), 75.0);
  const std::vector<FlowTally> all{{0, 7, 7}, {1, 30, 30}};
  EXPECT_DOUBLE_EQ(oagm::compute_pdr(all), 100.0);
}

TEST(ComputePdr, UnweightedDiffersFromAggregate) {
  const std::vector<FlowTally> f{{0, 10, 10}, {1, 90, 0}};
  EXPECT_DOUBLE_EQ(oagm::compute_pdr(f), 50.0);
  EXPECT_DOUBLE_EQ(oagm::compute_pdr_aggregate(f), 10.0);
}

TEST(ComputePdr, RejectsBadTallies) {
  EXPECT_THROW((void)oagm::compute_pdr(std::vector<FlowTally>{{0, 0, 0}}), oagm::MetricsError);
  EXPECT_THROW((void)oagm::compute_pdr(std::vector<FlowTally>{{0, 1, 2}}), oagm::MetricsError);
}

TEST(ComputePdr, ScaleInvariantPerFlow) {
  oagm::RandomStream rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<FlowTally> f;
    const std::size_t n = 1 + rng.below(6);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t sent = 1 + rng.below(500);
      f.push_back({i, sent, rng.below(sent + 1)});
    }
    auto scaled = f;
    const std::size_t which = rng.below(n);
    const std::uint64_t k = 1 + rng.below(20);
    scaled[which].sent *= k;
    scaled[which].received *= k;
    ASSERT_NEAR(oagm::compute_pdr(f), oagm::compute_pdr(scaled), 1e-9);
  }
}

TEST(ComputeEd, Examples) {
  EXPECT_DOUBLE_EQ(*oagm::compute_ed(std::vector<double>{0.010, 0.020, 0.030}), 20.0);
  EXPECT_DOUBLE_EQ(*oagm::compute_ed(std::vector<double>{0.005}), 5.0);
  EXPECT_FALSE(oagm::compute_ed(std::vector<double>{}));
}

TEST(ComputeEd, ShiftEquivariant) {
  oagm::RandomStream rng(6);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> d;
    const std::size_t n = 1 + rng.below(50);
    for (std::size_t i = 0; i < n; ++i) d.push_back(rng.uniform(0.0001, 0.5));
    const double c = rng.uniform(0.0, 0.2);
    auto shifted = d;
    for (double& x : shifted) x += c;
    ASSERT_NEAR(*oagm::compute_ed(shifted), *oagm::compute_ed(d) + 1000 * c, 1e-9);
  }
}

TEST(Aggregate, Examples) {
  oagm::SimCounters c;
  c.generated = c.received = 3480;
  c.control_tx = 105;
  c.delays.assign(3480, 0.004);
  c.flows = {{0, 1160, 1160}, {1, 1160, 1160}, {2, 1160, 1160}};
  auto m = oagm::aggregate(c);
  EXPECT_EQ(m.dp, 0u);
  EXPECT_EQ(m.co, 105u);
  EXPECT_DOUBLE_EQ(m.pdr, 100.0);
  EXPECT_NEAR(*m.ed_ms, 4.0, 1e-9);

  m = oagm::aggregate(oagm::SimCounters{});
  EXPECT_EQ(m, oagm::MetricsReport{});
  EXPECT_FALSE(m.ed_ms);

  oagm::SimCounters d;
  d.generated = 10;
  d.received = 7;
  d.dropped = 3;
  d.delays.assign(7, 0.01);
  d.flows = {{0, 10, 7}};
  m = oagm::aggregate(d);
  EXPECT_EQ(m.dp, 3u);
  EXPECT_EQ(m.rp + m.dp, m.gp);
  EXPECT_DOUBLE_EQ(m.pdr, 70.0);
}

TEST(Aggregate, RejectsInconsistentCounters) {
  oagm::SimCounters c;
  c.generated = 10;
  c.received = 7;
  c.dropped = 2;
  c.delays.assign(7, 0.01);
  c.flows = {{0, 10, 7}};
  EXPECT_THROW((void)oagm::aggregate(c), oagm::MetricsError);
  c.dropped = 3;
  c.delays.pop_back();
  EXPECT_THROW((void)oagm::aggregate(c), oagm::MetricsError);
  c.delays.push_back(0.01);
  c.flows = {{0, 9, 7}};
  EXPECT_THROW((void)oagm::aggregate(c), oagm::MetricsError);
}

TEST(Aggregate, DpPlusRpIsGpOnRandomCounters) {
  oagm::RandomStream rng(8);
  for (int trial = 0; trial < 500; ++trial) {
    oagm::SimCounters c;
    const std::size_t flows = 1 + rng.below(5);
    for (std::size_t f = 0; f < flows; ++f) {
      const std::uint64_t sent = rng.below(100);
      const std::uint64_t recv = rng.below(sent + 1);
      c.flows.push_back({f, sent, recv});
      c.generated += sent;
      c.received += recv;
    }
    c.dropped = c.generated - c.received;
    c.delays.assign(c.received, 0.002);
    const auto m = oagm::aggregate(c);
    ASSERT_EQ(m.dp + m.rp, m.gp);
    ASSERT_EQ(m.ed_ms.has_value(), c.received > 0);
  }
}
