#pragma once

// Delivery metrics: generated/received/dropped packets, control overhead,
// packet delivery ratio and mean end-to-end delay.

#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "oagm/counters.hpp"

namespace oagm {

class MetricsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unweighted mean over flows of R_f / N_f, in percent.
inline double compute_pdr(std::span<const FlowTally> tallies) {
  if (tallies.empty()) throw MetricsError("compute_pdr: no flows");
  double sum = 0.0;
  for (const auto& f : tallies) {
    if (f.sent == 0)
      throw MetricsError("compute_pdr: flow " + std::to_string(f.flow_id) + " sent no packets");
    if (f.received > f.sent)
      throw MetricsError("compute_pdr: flow " + std::to_string(f.flow_id) +
                         " received more than it sent");
    sum += static_cast<double>(f.received) / static_cast<double>(f.sent);
  }
  return 100.0 * sum / static_cast<double>(tallies.size());
}

/// Total received over total sent, in percent.
inline double compute_pdr_aggregate(std::span<const FlowTally> tallies) {
  std::uint64_t sent = 0;
  std::uint64_t received = 0;
  for (const auto& f : tallies) {
    sent += f.sent;
    received += f.received;
  }
  if (sent == 0) throw MetricsError("compute_pdr_aggregate: nothing sent");
  return 100.0 * static_cast<double>(received) / static_cast<double>(sent);
}

/// Mean delay in milliseconds; empty when no packet was delivered.
inline std::optional<double> compute_ed(std::span<const double> delays_s) {
  if (delays_s.empty()) return std::nullopt;
  const double sum = std::accumulate(delays_s.begin(), delays_s.end(), 0.0);
  return 1000.0 * sum / static_cast<double>(delays_s.size());
}

struct MetricsReport {
  std::uint64_t gp = 0;
  std::uint64_t rp = 0;
  std::uint64_t dp = 0;
  std::uint64_t co = 0;
  double pdr = 0.0;
  std::optional<double> ed_ms;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

inline MetricsReport aggregate(const SimCounters& c) {
  if (c.received > c.generated)
    throw MetricsError("aggregate: received exceeds generated");
  if (c.generated != c.received + c.dropped)
    throw MetricsError("aggregate: generated != received + dropped");
  if (c.delays.size() != c.received)
    throw MetricsError("aggregate: delay count does not match received count");
  std::uint64_t flow_sent = 0;
  std::uint64_t flow_received = 0;
  std::vector<FlowTally> active;
  for (const auto& f : c.flows) {
    flow_sent += f.sent;
    flow_received += f.received;
    if (f.sent > 0) active.push_back(f);
  }
  if (flow_sent != c.generated || flow_received != c.received)
    throw MetricsError("aggregate: per-flow tallies disagree with totals");

  MetricsReport r;
  r.gp = c.generated;
  r.rp = c.received;
  r.dp = c.generated - c.received;
  r.co = c.control_tx;
  // Flows that never sent (started after the run ended) have no ratio.
  r.pdr = active.empty() ? 0.0 : compute_pdr(active);
  r.ed_ms = compute_ed(c.delays);
  return r;
}

}  // namespace oagm
