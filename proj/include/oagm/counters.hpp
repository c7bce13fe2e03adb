#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace oagm {

/// Per-flow transmitted (N_f) and received (R_f) data packet counts.
struct FlowTally {
  std::size_t flow_id = 0;
  std::uint64_t sent = 0;
  std::uint64_t received = 0;

  friend bool operator==(const FlowTally&, const FlowTally&) = default;
};

/// Tallies of one simulation run, taken at teardown. Packets still in flight
/// at teardown are counted as dropped.
struct SimCounters {
  std::uint64_t generated = 0;
  std::uint64_t received = 0;
  std::uint64_t dropped = 0;
  std::uint64_t control_tx = 0;
  std::vector<double> delays;  // seconds, one per received packet
  std::vector<FlowTally> flows;

  friend bool operator==(const SimCounters&, const SimCounters&) = default;
};

}  // namespace oagm
