#pragma once

// NS-2 mobility scenario ("setdest") output.

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "oagm/mobility.hpp"

namespace oagm {

namespace detail {

inline std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace detail

/// Writes initial positions (X_, Y_, Z_ per node, in id order) followed by
/// one setdest line per leg, ordered by departure time then node id. All
/// reals carry exactly two decimals.
inline void emit_ns2_trace(const MovementSchedule& schedule, std::ostream& out) {
  using detail::fixed2;
  for (std::size_t n = 0; n < schedule.node_count(); ++n) {
    const Point p = schedule.initial[n];
    out << "$node_(" << n << ") set X_ " << fixed2(p.x) << '\n';
    out << "$node_(" << n << ") set Y_ " << fixed2(p.y) << '\n';
    out << "$node_(" << n << ") set Z_ 0.00\n";
  }

  std::vector<std::tuple<double, std::size_t, std::size_t>> order;
  for (std::size_t n = 0; n < schedule.node_count(); ++n)
    for (std::size_t k = 0; k < schedule.legs[n].size(); ++k)
      order.emplace_back(schedule.legs[n][k].depart_time, n, k);
  std::sort(order.begin(), order.end());

  for (const auto& [t, n, k] : order) {
    const TimedLeg& leg = schedule.legs[n][k];
    out << "$ns_ at " << fixed2(t) << " \"$node_(" << n << ") setdest " << fixed2(leg.to.x) << ' '
        << fixed2(leg.to.y) << ' ' << fixed2(leg.speed) << "\"\n";
  }
  out.flush();
  if (!out) throw std::runtime_error("emit_ns2_trace: write failed");
}

}  // namespace oagm
