#pragma once

// Discrete-event packet simulation of CBR flows over a source-routed ad-hoc
// network (DSR-lite: RREQ flood, single RREP, RERR, per-source route cache).
//
// Medium model: a node sends one frame at a time from a FIFO interface queue
// (control frames first). A sender defers while any node within carrier-sense
// range is transmitting; there are no collisions and no backoff. Frame time is
// size * 8 / bandwidth. Unicast links are evaluated at the instant a frame
// starts, from positions interpolated along the movement schedule; RREQ
// broadcasts reach the sender's neighbors in the current topology epoch.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <queue>
#include <string>
#include <unordered_set>
#include <vector>

#include "oagm/config.hpp"
#include "oagm/counters.hpp"
#include "oagm/geometry.hpp"
#include "oagm/mobility.hpp"
#include "oagm/propagation.hpp"
#include "oagm/random.hpp"

namespace oagm {

using NodeId = std::size_t;

struct Flow {
  NodeId src = 0;
  NodeId dst = 0;
  double start = 0.0;
  std::size_t packet_size = 512;
  double interval = 0.25;
};

/// Time-varying connectivity induced by a movement schedule and propagation.
class Topology {
 public:
  Topology(const MovementSchedule& schedule, const Terrain& terrain, const RadioParams& radio,
           AttenuationField& attenuation, double epoch_s = 1.0)
      : schedule_(schedule), terrain_(terrain), radio_(radio), attenuation_(attenuation),
        stamp_(schedule.node_count(), -1.0), pos_(schedule.node_count()),
        cursor_(schedule.node_count(), 0), epoch_s_(epoch_s),
        range2_(radio.nominal_range * radio.nominal_range),
        sense2_(radio.carrier_sense_range * radio.carrier_sense_range),
        reach2_(std::max(range2_, sense2_)), snapshot_epoch_(schedule.node_count(), -1),
        snapshot_(schedule.node_count()) {
    if (!(epoch_s_ > 0.0)) throw std::invalid_argument("topology epoch must be > 0");
  }

  [[nodiscard]] std::size_t node_count() const { return schedule_.node_count(); }

  Point position(NodeId n, double t) {
    if (stamp_[n] == t) return pos_[n];
    const auto& legs = schedule_.legs[n];
    Point p;
    if (stamp_[n] <= t) {
      // Queries arrive in time order; advance the leg cursor.
      std::size_t& c = cursor_[n];
      while (c + 1 < legs.size() && legs[c + 1].depart_time <= t) ++c;
      if (legs.empty() || t < legs[c].depart_time) {
        p = schedule_.position(n, t);
      } else {
        const TimedLeg& leg = legs[c];
        const double arrive = leg.arrival_time();
        p = t >= arrive ? leg.to
                        : lerp(leg.from, leg.to, (t - leg.depart_time) / (arrive - leg.depart_time));
      }
    } else {
      p = schedule_.position(n, t);
    }
    stamp_[n] = t;
    pos_[n] = p;
    return p;
  }

  struct Probe {
    bool up = false;       // within reception range
    bool sensed = false;   // within carrier-sense range
  };

  Probe probe(NodeId i, NodeId j, double t) { return probe_at(i, j, position(i, t), position(j, t), t); }

  bool link_up(NodeId i, NodeId j, double t) { return i != j && probe(i, j, t).up; }

  /// Neighbors of i in the snapshot of the epoch containing t: positions and
  /// attenuation are taken at the epoch start and reused until it ends.
  const std::vector<NodeId>& snapshot_neighbors(NodeId i, double t) {
    const auto epoch = static_cast<std::int64_t>(std::floor(t / epoch_s_));
    if (snapshot_epoch_[i] != epoch) {
      const double t0 = static_cast<double>(epoch) * epoch_s_;
      auto& out = snapshot_[i];
      out.clear();
      const Point a = schedule_.position(i, t0);
      for (NodeId j = 0; j < node_count(); ++j)
        if (j != i && probe_at(i, j, a, schedule_.position(j, t0), t0).up) out.push_back(j);
      snapshot_epoch_[i] = epoch;
    }
    return snapshot_[i];
  }

  std::vector<NodeId> neighbors(NodeId i, double t) {
    std::vector<NodeId> out;
    for (NodeId j = 0; j < node_count(); ++j)
      if (j != i && probe(i, j, t).up) out.push_back(j);
    return out;
  }

 private:
  Probe probe_at(NodeId i, NodeId j, Point a, Point b, double t) {
    const double d2 = squared_distance(a, b);
    if (d2 > reach2_) return {};
    if (!segment_blocked(a, b, terrain_)) return {d2 <= range2_, d2 <= sense2_};
    const double atten = attenuation_.at(i, j, t);
    const double f =
        atten == cached_atten_ ? cached_factor2_ : factor2(atten);
    return {d2 <= range2_ * f, d2 <= sense2_ * f};
  }

  // Squared range shrink factor for a loss of `atten` dB.
  double factor2(double atten) {
    const double f = attenuated_range(1.0, atten, radio_.path_loss_exponent);
    cached_atten_ = atten;
    cached_factor2_ = f * f;
    return cached_factor2_;
  }

  const MovementSchedule& schedule_;
  const Terrain& terrain_;
  RadioParams radio_;
  AttenuationField& attenuation_;
  std::vector<double> stamp_;
  std::vector<Point> pos_;
  std::vector<std::size_t> cursor_;
  double epoch_s_;
  double range2_;
  double sense2_;
  double reach2_;
  double cached_atten_ = -1.0;
  double cached_factor2_ = 1.0;
  std::vector<std::int64_t> snapshot_epoch_;
  std::vector<std::vector<NodeId>> snapshot_;
};

/// Nodes j != i whose link from i is up at time t.
inline std::vector<NodeId> neighbor_set(NodeId i, double t, const MovementSchedule& schedule,
                                        const Terrain& terrain, const RadioParams& params,
                                        AttenuationField& attenuation) {
  Topology topo(schedule, terrain, params, attenuation);
  return topo.neighbors(i, t);
}

struct DiscoveryOutcome {
  std::optional<std::vector<NodeId>> route;
  std::uint64_t control_tx = 0;
};

/// Route discovery over a fixed topology. Every node re-broadcasts a request
/// once (within `ttl` hops); the destination does not re-broadcast, and its
/// receipt is tallied as the terminal step of the flood. The first request to
/// reach the destination is answered by one RREP retracing its path.
inline DiscoveryOutcome route_discovery(NodeId src, NodeId dst, std::size_t node_count,
                                        const std::function<std::vector<NodeId>(NodeId)>& neighbors,
                                        std::size_t ttl) {
  DiscoveryOutcome out;
  if (src == dst) {
    out.route = std::vector<NodeId>{src};
    return out;
  }
  std::vector<bool> seen(node_count, false);
  std::deque<std::vector<NodeId>> pending{{src}};
  seen[src] = true;
  while (!pending.empty()) {
    const std::vector<NodeId> path = std::move(pending.front());
    pending.pop_front();
    ++out.control_tx;
    auto next = neighbors(path.back());
    std::sort(next.begin(), next.end());
    for (NodeId v : next) {
      if (seen[v]) continue;
      seen[v] = true;
      std::vector<NodeId> extended = path;
      extended.push_back(v);
      if (v == dst) {
        ++out.control_tx;
        out.route = extended;
      } else if (extended.size() - 1 < ttl) {
        pending.push_back(std::move(extended));
      }
    }
  }
  if (out.route) out.control_tx += out.route->size() - 1;
  return out;
}

enum class PacketKind { kData, kRreq, kRrep, kRerr };

inline const char* to_string(PacketKind k) {
  switch (k) {
    case PacketKind::kData:
      return "DATA";
    case PacketKind::kRreq:
      return "RREQ";
    case PacketKind::kRrep:
      return "RREP";
    case PacketKind::kRerr:
      return "RERR";
  }
  return "?";
}

struct Packet {
  std::uint64_t id = 0;
  PacketKind kind = PacketKind::kData;
  std::optional<std::size_t> flow;
  // DATA: source route. RREQ: path so far. RREP/RERR: hops still to travel,
  // starting at the node that created it.
  std::vector<NodeId> route;
  std::size_t hop = 0;  // index in `route` of the current holder
  double send_time = 0.0;
  std::optional<double> receive_time;
  std::size_t size_bytes = 0;
  std::uint64_t request_id = 0;
  NodeId target = 0;  // RREQ: sought destination
  std::size_t retries_left = 0;
  std::optional<std::size_t> carried;  // RERR: data packet returning to its source
  std::pair<NodeId, NodeId> broken_link{0, 0};
  std::vector<NodeId> receivers;  // RREQ in flight: snapshot neighbors of the sender
};

class Simulator {
 public:
  Simulator(const ScenarioConfig& config, const MovementSchedule& schedule, std::vector<Flow> flows,
            const RandomStream& rng, std::ostream* event_log = nullptr)
      : config_(config), terrain_(config.terrain()), schedule_(schedule),
        flows_(std::move(flows)), attenuation_(config.radio, rng, config.snapshot_epoch_s),
        topology_(schedule_, terrain_, config.radio, attenuation_, config.snapshot_epoch_s), nodes_(schedule.node_count()),
        log_(event_log) {
    for (const auto& f : flows_) {
      if (f.src >= nodes_.size() || f.dst >= nodes_.size())
        throw std::invalid_argument("flow endpoint out of range");
      if (f.src == f.dst) throw std::invalid_argument("flow source equals destination");
      if (!(f.interval > 0.0)) throw std::invalid_argument("flow interval must be > 0");
    }
  }

  SimCounters run() {
    counters_ = {};
    for (std::size_t f = 0; f < flows_.size(); ++f) counters_.flows.push_back({f, 0, 0});
    if (config_.duration <= 0.0) return counters_;

    for (std::size_t f = 0; f < flows_.size(); ++f)
      if (flows_[f].start <= config_.duration) schedule_event(flows_[f].start, kGenerate, flows_[f].src, f, 0);

    const double end = config_.duration + config_.drain_s;
    while (!events_.empty() && events_.top().time <= end) {
      const Event e = events_.top();
      events_.pop();
      now_ = e.time;
      dispatch(e);
    }
    counters_.dropped += live_data_;
    live_data_ = 0;
    return counters_;
  }

 private:
  enum Kind { kGenerate, kTxAttempt, kTxDone, kReceive, kTxFailed, kDiscoveryTimeout };

  struct Event {
    double time;
    std::uint64_t seq;
    Kind kind;
    NodeId node;
    std::size_t index;  // packet index, or flow index for kGenerate
    std::uint64_t aux;  // generation number / request id / destination
    std::uint64_t aux2;

    bool operator>(const Event& o) const {
      return time != o.time ? time > o.time : seq > o.seq;
    }
  };

  struct OnAir {
    NodeId sender;
    double start;
    double end;
  };

  struct PendingDiscovery {
    std::uint64_t request_id = 0;
    std::deque<std::size_t> buffer;
  };

  struct NodeRuntime {
    std::deque<std::size_t> control_queue;
    std::deque<std::size_t> data_queue;
    bool transmitting = false;
    bool attempt_scheduled = false;
    std::unordered_set<std::uint64_t> seen_requests;
    std::map<NodeId, std::vector<NodeId>> route_cache;
    std::map<NodeId, PendingDiscovery> pending;
  };

  void schedule_event(double t, Kind k, NodeId node, std::size_t index, std::uint64_t aux,
                      std::uint64_t aux2 = 0) {
    events_.push({t, next_seq_++, k, node, index, aux, aux2});
  }

  void log(const char* kind, NodeId node, std::uint64_t packet_id) {
    if (!log_) return;
    char buf[160];
    std::snprintf(buf, sizeof buf, "t=%.6f kind=%s node=%zu pkt=%llu\n", now_, kind, node,
                  static_cast<unsigned long long>(packet_id));
    *log_ << buf;
  }

  std::size_t new_packet(Packet p) {
    p.id = next_packet_id_++;
    packets_.push_back(std::move(p));
    return packets_.size() - 1;
  }

  std::size_t control_size(std::size_t addresses) const {
    return config_.control_header_bytes + 4 * addresses;
  }

  void dispatch(const Event& e) {
    switch (e.kind) {
      case kGenerate:
        on_generate(e.index, e.aux);
        break;
      case kTxAttempt:
        on_tx_attempt(e.node);
        break;
      case kTxDone:
        nodes_[e.node].transmitting = false;
        try_start(e.node);
        break;
      case kReceive:
        on_receive(e.node, e.index);
        break;
      case kTxFailed:
        on_tx_failed(e.node, e.index);
        break;
      case kDiscoveryTimeout:
        on_discovery_timeout(e.node, static_cast<NodeId>(e.aux), e.aux2);
        break;
    }
  }

  void drop_data(std::size_t idx, NodeId at) {
    log("drop", at, packets_[idx].id);
    ++counters_.dropped;
    --live_data_;
  }

  // --- traffic -------------------------------------------------------------

  void on_generate(std::size_t flow_index, std::uint64_t k) {
    const Flow& f = flows_[flow_index];
    Packet p;
    p.kind = PacketKind::kData;
    p.flow = flow_index;
    p.send_time = now_;
    p.size_bytes = f.packet_size;
    p.retries_left = config_.rediscovery_retries;
    const std::size_t idx = new_packet(std::move(p));
    ++counters_.generated;
    ++counters_.flows[flow_index].sent;
    ++live_data_;
    log("gen", f.src, packets_[idx].id);
    send_from_source(f.src, idx);

    const double next = f.start + static_cast<double>(k + 1) * f.interval;
    if (next <= config_.duration + 1e-9) schedule_event(next, kGenerate, f.src, flow_index, k + 1);
  }

  NodeId data_destination(std::size_t idx) const { return flows_[*packets_[idx].flow].dst; }

  void send_from_source(NodeId src, std::size_t idx) {
    const NodeId dst = data_destination(idx);
    auto& rt = nodes_[src];
    if (auto it = rt.route_cache.find(dst); it != rt.route_cache.end()) {
      packets_[idx].route = it->second;
      packets_[idx].hop = 0;
      enqueue(src, idx);
      return;
    }
    auto& pend = rt.pending[dst];
    if (pend.buffer.size() >= config_.send_buffer_cap) {
      drop_data(idx, src);
      return;
    }
    pend.buffer.push_back(idx);
    if (pend.request_id == 0) start_discovery(src, dst);
  }

  void start_discovery(NodeId src, NodeId dst) {
    const std::uint64_t req = ++next_request_id_;
    nodes_[src].pending[dst].request_id = req;
    nodes_[src].seen_requests.insert(req);
    Packet rreq;
    rreq.kind = PacketKind::kRreq;
    rreq.route = {src};
    rreq.request_id = req;
    rreq.target = dst;
    rreq.send_time = now_;
    rreq.size_bytes = control_size(1);
    enqueue(src, new_packet(std::move(rreq)));
    schedule_event(now_ + config_.discovery_timeout_s, kDiscoveryTimeout, src, 0, dst, req);
  }

  void on_discovery_timeout(NodeId src, NodeId dst, std::uint64_t req) {
    auto& rt = nodes_[src];
    auto it = rt.pending.find(dst);
    if (it == rt.pending.end() || it->second.request_id != req) return;
    std::deque<std::size_t> keep;
    for (std::size_t idx : it->second.buffer) {
      if (packets_[idx].retries_left > 0) {
        --packets_[idx].retries_left;
        keep.push_back(idx);
      } else {
        drop_data(idx, src);
      }
    }
    if (keep.empty()) {
      rt.pending.erase(it);
      return;
    }
    it->second.buffer = std::move(keep);
    start_discovery(src, dst);
  }

  void rebuffer_or_drop(NodeId src, std::size_t idx) {
    if (packets_[idx].retries_left == 0) {
      drop_data(idx, src);
      return;
    }
    --packets_[idx].retries_left;
    send_from_source(src, idx);
  }

  void invalidate_routes(NodeId src, std::pair<NodeId, NodeId> link) {
    auto& cache = nodes_[src].route_cache;
    for (auto it = cache.begin(); it != cache.end();) {
      const auto& r = it->second;
      bool uses = false;
      for (std::size_t k = 1; k < r.size() && !uses; ++k)
        uses = (r[k - 1] == link.first && r[k] == link.second) ||
               (r[k - 1] == link.second && r[k] == link.first);
      it = uses ? cache.erase(it) : std::next(it);
    }
  }

  // --- medium --------------------------------------------------------------

  void enqueue(NodeId node, std::size_t idx) {
    auto& rt = nodes_[node];
    if (packets_[idx].kind == PacketKind::kData) {
      if (rt.data_queue.size() >= config_.ifq_cap) {
        drop_data(idx, node);
        return;
      }
      rt.data_queue.push_back(idx);
    } else {
      if (rt.control_queue.size() >= config_.ifq_cap) {
        log("drop", node, packets_[idx].id);
        if (packets_[idx].carried) drop_data(*packets_[idx].carried, node);
        return;
      }
      rt.control_queue.push_back(idx);
    }
    try_start(node);
  }

  void try_start(NodeId node) {
    auto& rt = nodes_[node];
    if (rt.transmitting || rt.attempt_scheduled) return;
    if (rt.control_queue.empty() && rt.data_queue.empty()) return;
    rt.attempt_scheduled = true;
    schedule_event(now_, kTxAttempt, node, 0, 0);
  }

  // End of the last ongoing transmission `node` can sense, or now.
  double channel_free_at(NodeId node) {
    std::erase_if(on_air_, [&](const OnAir& a) { return a.end <= now_; });
    double until = now_;
    for (const auto& a : on_air_)
      if (a.sender != node && a.end > until && topology_.probe(a.sender, node, now_).sensed)
        until = a.end;
    return until;
  }

  void on_tx_attempt(NodeId node) {
    auto& rt = nodes_[node];
    rt.attempt_scheduled = false;
    if (const double free_at = channel_free_at(node); free_at > now_) {
      rt.attempt_scheduled = true;
      schedule_event(free_at, kTxAttempt, node, 0, 0);
      return;
    }
    std::deque<std::size_t>& q = rt.control_queue.empty() ? rt.data_queue : rt.control_queue;
    const std::size_t idx = q.front();
    q.pop_front();
    Packet& p = packets_[idx];

    const double airtime = static_cast<double>(p.size_bytes) * 8.0 / config_.bandwidth_bps;
    const double done = now_ + airtime;
    rt.transmitting = true;
    on_air_.push_back({node, now_, done});
    if (p.kind != PacketKind::kData) ++counters_.control_tx;

    if (p.kind == PacketKind::kRreq) {
      log("tx_rreq", node, p.id);
      p.receivers = topology_.snapshot_neighbors(node, now_);
      schedule_event(done, kReceive, node, idx, 0);
    } else {
      const NodeId next = p.route[p.hop + 1];
      log(p.kind == PacketKind::kData ? "tx_data" : p.kind == PacketKind::kRrep ? "tx_rrep" : "tx_rerr",
          node, p.id);
      if (topology_.link_up(node, next, now_))
        schedule_event(done, kReceive, next, idx, 0);
      else
        schedule_event(done, kTxFailed, node, idx, 0);
    }
    schedule_event(done, kTxDone, node, idx, 0);
  }

  // --- protocol ------------------------------------------------------------

  void on_receive(NodeId node, std::size_t idx) {
    Packet& p = packets_[idx];
    switch (p.kind) {
      case PacketKind::kRreq: {
        // One event per broadcast; `node` is the sender.
        const std::vector<NodeId> receivers = std::move(p.receivers);
        for (NodeId j : receivers) on_rreq(j, idx);
        return;
      }
      case PacketKind::kData:
        ++p.hop;
        if (p.hop + 1 == p.route.size()) {
          p.receive_time = now_;
          log("recv", node, p.id);
          ++counters_.received;
          ++counters_.flows[*p.flow].received;
          counters_.delays.push_back(now_ - p.send_time);
          --live_data_;
        } else {
          log("rx_data", node, p.id);
          enqueue(node, idx);
        }
        return;
      case PacketKind::kRrep:
        ++p.hop;
        if (p.hop + 1 == p.route.size())
          on_rrep_at_source(node, idx);
        else
          enqueue(node, idx);
        return;
      case PacketKind::kRerr:
        ++p.hop;
        if (p.hop + 1 == p.route.size())
          on_rerr_at_source(node, idx);
        else
          enqueue(node, idx);
        return;
    }
  }

  void on_rreq(NodeId node, std::size_t idx) {
    auto& rt = nodes_[node];
    const Packet& p = packets_[idx];
    if (!rt.seen_requests.insert(p.request_id).second) return;
    std::vector<NodeId> path = p.route;
    path.push_back(node);
    if (node == p.target) {
      ++counters_.control_tx;  // terminal receipt, closes the flood
      log("rx_rreq", node, p.id);
      Packet rrep;
      rrep.kind = PacketKind::kRrep;
      rrep.route.assign(path.rbegin(), path.rend());
      rrep.request_id = p.request_id;
      rrep.send_time = now_;
      rrep.size_bytes = control_size(rrep.route.size());
      enqueue(node, new_packet(std::move(rrep)));
      return;
    }
    if (path.size() - 1 >= nodes_.size()) return;  // TTL = node count hops
    Packet fwd;
    fwd.kind = PacketKind::kRreq;
    fwd.request_id = p.request_id;
    fwd.target = p.target;
    fwd.send_time = p.send_time;
    fwd.size_bytes = control_size(path.size());
    fwd.route = std::move(path);
    enqueue(node, new_packet(std::move(fwd)));
  }

  void on_rrep_at_source(NodeId src, std::size_t idx) {
    const Packet& p = packets_[idx];
    std::vector<NodeId> forward(p.route.rbegin(), p.route.rend());
    const NodeId dst = forward.back();
    log("rx_rrep", src, p.id);
    auto& rt = nodes_[src];
    rt.route_cache[dst] = forward;
    auto it = rt.pending.find(dst);
    if (it == rt.pending.end()) return;
    std::deque<std::size_t> buffered = std::move(it->second.buffer);
    rt.pending.erase(it);
    for (std::size_t d : buffered) {
      packets_[d].route = forward;
      packets_[d].hop = 0;
      enqueue(src, d);
    }
  }

  void on_rerr_at_source(NodeId src, std::size_t idx) {
    const Packet& p = packets_[idx];
    log("rx_rerr", src, p.id);
    invalidate_routes(src, p.broken_link);
    if (p.carried) rebuffer_or_drop(src, *p.carried);
  }

  void on_tx_failed(NodeId node, std::size_t idx) {
    Packet& p = packets_[idx];
    log("link_down", node, p.id);
    switch (p.kind) {
      case PacketKind::kData: {
        const std::pair<NodeId, NodeId> link{node, p.route[p.hop + 1]};
        if (p.hop == 0) {
          invalidate_routes(node, link);
          rebuffer_or_drop(node, idx);
          return;
        }
        Packet rerr;
        rerr.kind = PacketKind::kRerr;
        rerr.route.assign(p.route.rend() - static_cast<std::ptrdiff_t>(p.hop + 1), p.route.rend());
        rerr.send_time = now_;
        rerr.size_bytes = control_size(rerr.route.size());
        rerr.carried = idx;
        rerr.broken_link = link;
        enqueue(node, new_packet(std::move(rerr)));
        return;
      }
      case PacketKind::kRerr:
        if (p.carried) drop_data(*p.carried, node);
        return;
      case PacketKind::kRrep:
      case PacketKind::kRreq:
        return;
    }
  }

  const ScenarioConfig& config_;
  Terrain terrain_;
  const MovementSchedule& schedule_;
  std::vector<Flow> flows_;
  AttenuationField attenuation_;
  Topology topology_;
  std::vector<NodeRuntime> nodes_;
  std::ostream* log_;

  std::priority_queue<Event, std::vector<Event>, std::greater<>> events_;
  std::vector<Packet> packets_;
  std::vector<OnAir> on_air_;
  SimCounters counters_;
  double now_ = 0.0;
  std::uint64_t next_seq_ = 0;
  std::uint64_t next_packet_id_ = 0;
  std::uint64_t next_request_id_ = 0;
  std::uint64_t live_data_ = 0;
};

/// CBR flows for a scenario: endpoints from select_flows, start times uniform
/// in [0, flow_start_window_s).
inline std::vector<Flow> make_flows(const ScenarioConfig& config, std::size_t node_count,
                                    const RandomStream& rng) {
  if (node_count < 2) return {};
  RandomStream pick = rng.derive("flows");
  RandomStream starts = rng.derive("flow-starts");
  std::vector<Flow> flows;
  for (const auto& e : select_flows(node_count, pick, config.flow_fraction))
    flows.push_back({e.src, e.dst, starts.uniform(0.0, config.flow_start_window_s),
                     config.packet_size, config.cbr_interval});
  return flows;
}

inline SimCounters run_simulation(const ScenarioConfig& config, const MovementSchedule& schedule,
                                  std::vector<Flow> flows, const RandomStream& rng,
                                  std::ostream* event_log = nullptr) {
  Simulator sim(config, schedule, std::move(flows), rng, event_log);
  return sim.run();
}

inline SimCounters run_simulation(const ScenarioConfig& config, const MovementSchedule& schedule,
                                  const RandomStream& rng, std::ostream* event_log = nullptr) {
  return run_simulation(config, schedule, make_flows(config, schedule.node_count(), rng), rng,
                        event_log);
}

}  // namespace oagm
