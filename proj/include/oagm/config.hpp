#pragma once

// Scenario configuration and its flat key = value text format.
//
//   # comment
//   node_count = 100
//   model = OAGM
//   terrain.obstacles = 400 400 600 600; 100 100 200 150
//   [radio]
//   atten_min = 6        # read as radio.atten_min
//
// Missing keys keep their defaults; unknown keys are rejected.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oagm/geometry.hpp"
#include "oagm/propagation.hpp"

namespace oagm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MobilityModel { kMcm, kOagm };

inline const char* to_string(MobilityModel m) { return m == MobilityModel::kMcm ? "MCM" : "OAGM"; }

inline MobilityModel parse_model(std::string_view s) {
  if (s == "MCM" || s == "mcm") return MobilityModel::kMcm;
  if (s == "OAGM" || s == "oagm") return MobilityModel::kOagm;
  throw ConfigError("model: expected MCM or OAGM, got '" + std::string(s) + "'");
}

struct ScenarioConfig {
  double duration = 300.0;
  double terrain_width = 1000.0;
  double terrain_height = 1000.0;
  std::vector<RectObstacle> obstacles{{{400.0, 400.0}, {600.0, 600.0}}};
  std::size_t node_count = 50;
  // Nominal speed; speed_min/speed_max default to it.
  double speed = 2.0;
  std::optional<double> speed_min;
  std::optional<double> speed_max;
  MobilityModel model = MobilityModel::kOagm;
  std::uint64_t seed = 1;
  std::size_t group_size = 5;
  double member_offset_m = 50.0;
  double flow_fraction = 0.05;
  std::size_t packet_size = 512;
  double cbr_interval = 0.25;
  double flow_start_window_s = 1.0;
  double bandwidth_bps = 2e6;
  RadioParams radio;
  double snapshot_epoch_s = 1.0;
  double discovery_timeout_s = 1.0;
  std::size_t send_buffer_cap = 64;
  std::size_t rediscovery_retries = 1;
  std::size_t control_header_bytes = 32;
  std::size_t ifq_cap = 50;
  double drain_s = 5.0;

  [[nodiscard]] double v_min() const { return speed_min.value_or(speed); }
  [[nodiscard]] double v_max() const { return speed_max.value_or(speed); }

  [[nodiscard]] Terrain terrain() const { return Terrain(terrain_width, terrain_height, obstacles); }

  void validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
      throw ConfigError(field + ": " + why);
    };
    if (!(duration >= 0.0) || !std::isfinite(duration)) fail("duration", "must be >= 0");
    if (!(terrain_width > 0.0)) fail("terrain.width", "must be > 0");
    if (!(terrain_height > 0.0)) fail("terrain.height", "must be > 0");
    if (node_count < 1) fail("node_count", "must be >= 1");
    if (!(speed >= 0.0) || !std::isfinite(speed)) fail("speed", "must be >= 0");
    if (!(v_min() >= 0.0)) fail("speed_min", "must be >= 0");
    if (!(v_max() >= v_min())) fail("speed_max", "must be >= speed_min");
    if (v_min() == 0.0 && v_max() > 0.0) fail("speed_min", "must be > 0 when speed_max > 0");
    if (group_size < 1) fail("group_size", "must be >= 1");
    if (!(member_offset_m > 0.0)) fail("member_offset_m", "must be > 0");
    if (!(flow_fraction > 0.0 && flow_fraction <= 0.5)) fail("flow_fraction", "must be in (0, 0.5]");
    if (packet_size < 1) fail("packet_size", "must be >= 1");
    if (!(cbr_interval > 0.0)) fail("cbr_interval", "must be > 0");
    if (!(flow_start_window_s >= 0.0)) fail("flow_start_window_s", "must be >= 0");
    if (!(bandwidth_bps > 0.0)) fail("bandwidth_bps", "must be > 0");
    if (!(snapshot_epoch_s > 0.0)) fail("snapshot_epoch_s", "must be > 0");
    if (!(discovery_timeout_s > 0.0)) fail("dsr.discovery_timeout_s", "must be > 0");
    if (send_buffer_cap < 1) fail("dsr.send_buffer_cap", "must be >= 1");
    if (ifq_cap < 1) fail("mac.ifq_cap", "must be >= 1");
    if (!(drain_s >= 0.0)) fail("drain_s", "must be >= 0");
    try {
      radio.validate();
      (void)terrain();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError(key + ": expected a number, got '" + v + "'");
  return out;
}

inline std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size())
    throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  return out;
}

// "x0 y0 x1 y1; x0 y0 x1 y1" (commas also accepted as separators).
inline std::vector<RectObstacle> parse_obstacles(const std::string& key, std::string v) {
  std::vector<RectObstacle> out;
  for (char& c : v)
    if (c == ',') c = ' ';
  std::stringstream groups(v);
  std::string group;
  while (std::getline(groups, group, ';')) {
    group = trim(group);
    if (group.empty()) continue;
    std::istringstream in(group);
    std::vector<double> nums;
    std::string tok;
    while (in >> tok) nums.push_back(parse_double(key, tok));
    if (nums.size() != 4)
      throw ConfigError(key + ": each obstacle needs 4 numbers 'x0 y0 x1 y1', got '" + group +
                        "'");
    out.push_back({{nums[0], nums[1]}, {nums[2], nums[3]}});
  }
  return out;
}

}  // namespace detail

/// Applies one `key = value` assignment. Throws ConfigError naming the key.
inline void apply_setting(ScenarioConfig& c, const std::string& key, const std::string& value) {
  using detail::parse_double;
  using detail::parse_uint;
  using Setter = std::function<void(const std::string&)>;
  const std::map<std::string, Setter, std::less<>> setters{
      {"duration", [&](const std::string& v) { c.duration = parse_double(key, v); }},
      {"terrain.width", [&](const std::string& v) { c.terrain_width = parse_double(key, v); }},
      {"terrain.height", [&](const std::string& v) { c.terrain_height = parse_double(key, v); }},
      {"terrain.obstacles",
       [&](const std::string& v) { c.obstacles = detail::parse_obstacles(key, v); }},
      {"node_count", [&](const std::string& v) { c.node_count = parse_uint(key, v); }},
      {"speed", [&](const std::string& v) { c.speed = parse_double(key, v); }},
      {"speed_min", [&](const std::string& v) { c.speed_min = parse_double(key, v); }},
      {"speed_max", [&](const std::string& v) { c.speed_max = parse_double(key, v); }},
      {"model", [&](const std::string& v) { c.model = parse_model(v); }},
      {"seed", [&](const std::string& v) { c.seed = parse_uint(key, v); }},
      {"group_size", [&](const std::string& v) { c.group_size = parse_uint(key, v); }},
      {"member_offset_m", [&](const std::string& v) { c.member_offset_m = parse_double(key, v); }},
      {"flow_fraction", [&](const std::string& v) { c.flow_fraction = parse_double(key, v); }},
      {"packet_size", [&](const std::string& v) { c.packet_size = parse_uint(key, v); }},
      {"cbr_interval", [&](const std::string& v) { c.cbr_interval = parse_double(key, v); }},
      {"flow_start_window_s",
       [&](const std::string& v) { c.flow_start_window_s = parse_double(key, v); }},
      {"bandwidth_bps", [&](const std::string& v) { c.bandwidth_bps = parse_double(key, v); }},
      {"snapshot_epoch_s", [&](const std::string& v) { c.snapshot_epoch_s = parse_double(key, v); }},
      {"drain_s", [&](const std::string& v) { c.drain_s = parse_double(key, v); }},
      {"radio.nominal_range",
       [&](const std::string& v) { c.radio.nominal_range = parse_double(key, v); }},
      {"radio.atten_min", [&](const std::string& v) { c.radio.atten_min = parse_double(key, v); }},
      {"radio.atten_max", [&](const std::string& v) { c.radio.atten_max = parse_double(key, v); }},
      {"radio.path_loss_exponent",
       [&](const std::string& v) { c.radio.path_loss_exponent = parse_double(key, v); }},
      {"radio.carrier_sense_range",
       [&](const std::string& v) { c.radio.carrier_sense_range = parse_double(key, v); }},
      {"radio.attenuation",
       [&](const std::string& v) {
         try {
           c.radio.attenuation_mode = parse_attenuation_mode(v);
         } catch (const std::invalid_argument& e) {
           throw ConfigError(key + ": " + e.what());
         }
       }},
      {"dsr.discovery_timeout_s",
       [&](const std::string& v) { c.discovery_timeout_s = parse_double(key, v); }},
      {"dsr.send_buffer_cap", [&](const std::string& v) { c.send_buffer_cap = parse_uint(key, v); }},
      {"dsr.retries", [&](const std::string& v) { c.rediscovery_retries = parse_uint(key, v); }},
      {"dsr.control_header_bytes",
       [&](const std::string& v) { c.control_header_bytes = parse_uint(key, v); }},
      {"mac.ifq_cap", [&](const std::string& v) { c.ifq_cap = parse_uint(key, v); }},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) throw ConfigError("unknown key '" + key + "'");
  it->second(value);
}

/// Parses config text, then validates the result.
inline ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig c;
  std::istringstream in{std::string(text)};
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section header");
      section = detail::trim(std::string_view(line).substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    std::string key = detail::trim(std::string_view(line).substr(0, eq));
    const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(where + "empty key");
    if (!section.empty()) key = section + "." + key;
    try {
      apply_setting(c, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  c.validate();
  return c;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace oagm
