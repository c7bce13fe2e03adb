#pragma once

// Two-ray ground reception with obstacle attenuation, expressed as range
// rules. Under the d^-4 law a loss of A dB shrinks the reception range by a
// factor 10^(-A/40), so a link is up iff its length is within that range.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "oagm/geometry.hpp"
#include "oagm/random.hpp"

namespace oagm {

enum class AttenuationMode {
  kEpoch,          // one draw per unordered node pair per topology epoch
  kPerPacket,      // fresh draw for every obstructed link evaluation
  kDeterministic,  // fixed at the midpoint of [atten_min, atten_max]
};

struct RadioParams {
  double nominal_range = 250.0;
  double atten_min = 6.0;
  double atten_max = 50.0;
  double path_loss_exponent = 4.0;
  // Transmissions defer while another node within this range is sending.
  double carrier_sense_range = 550.0;
  AttenuationMode attenuation_mode = AttenuationMode::kEpoch;

  void validate() const {
    if (!(nominal_range > 0.0)) throw std::invalid_argument("radio.nominal_range must be > 0");
    if (!(atten_min > 0.0)) throw std::invalid_argument("radio.atten_min must be > 0");
    if (!(atten_min <= atten_max))
      throw std::invalid_argument("radio.atten_max must be >= radio.atten_min");
    if (!(path_loss_exponent > 0.0))
      throw std::invalid_argument("radio.path_loss_exponent must be > 0");
    if (!(carrier_sense_range >= 0.0))
      throw std::invalid_argument("radio.carrier_sense_range must be >= 0");
  }

  [[nodiscard]] double mean_attenuation_db() const { return 0.5 * (atten_min + atten_max); }
};

inline double sample_attenuation_db(RandomStream& rng, const RadioParams& params) {
  if (params.atten_min == params.atten_max) return params.atten_min;
  return rng.uniform(params.atten_min, params.atten_max);
}

/// Range after losing `attenuation_db` under a d^-n power law.
inline double attenuated_range(double range, double attenuation_db, double exponent = 4.0) {
  if (attenuation_db == 0.0) return range;
  return range * std::pow(10.0, -attenuation_db / (10.0 * exponent));
}

struct LinkSample {
  Point tx;
  Point rx;
  bool obstructed = false;
  double attenuation_db = 0.0;
  bool up = false;
};

/// `attenuation_db` is applied only when the path crosses an obstacle.
inline LinkSample link_up(Point tx, Point rx, const Terrain& terrain, const RadioParams& params,
                          double attenuation_db) {
  LinkSample s{tx, rx, segment_blocked(tx, rx, terrain), 0.0, false};
  if (s.obstructed) s.attenuation_db = attenuation_db;
  const double range =
      attenuated_range(params.nominal_range, s.attenuation_db, params.path_loss_exponent);
  s.up = distance(tx, rx) <= range;
  return s;
}

/// Supplies the attenuation an obstructed link i<->j suffers at time t.
class AttenuationField {
 public:
  AttenuationField(const RadioParams& params, const RandomStream& rng, double epoch_s)
      : params_(params), key_(rng.derive("attenuation").key()),
        per_packet_(rng.derive("attenuation-per-packet")), epoch_s_(epoch_s) {
    if (!(epoch_s_ > 0.0)) throw std::invalid_argument("attenuation epoch must be > 0");
  }

  double at(std::size_t i, std::size_t j, double t) {
    switch (params_.attenuation_mode) {
      case AttenuationMode::kDeterministic:
        return params_.mean_attenuation_db();
      case AttenuationMode::kPerPacket:
        return sample_attenuation_db(per_packet_, params_);
      case AttenuationMode::kEpoch:
        break;
    }
    if (params_.atten_min == params_.atten_max) return params_.atten_min;
    const auto lo = static_cast<std::uint64_t>(i < j ? i : j);
    const auto hi = static_cast<std::uint64_t>(i < j ? j : i);
    const auto epoch = static_cast<std::uint64_t>(std::floor(t / epoch_s_));
    return params_.atten_min +
           (params_.atten_max - params_.atten_min) * keyed_uniform(key_, lo, hi, epoch);
  }

  [[nodiscard]] const RadioParams& params() const noexcept { return params_; }

 private:
  RadioParams params_;
  std::uint64_t key_;
  RandomStream per_packet_;
  double epoch_s_;
};

inline AttenuationMode parse_attenuation_mode(const std::string& s) {
  if (s == "epoch") return AttenuationMode::kEpoch;
  if (s == "per_packet") return AttenuationMode::kPerPacket;
  if (s == "deterministic") return AttenuationMode::kDeterministic;
  throw std::invalid_argument("unknown attenuation mode '" + s + "'");
}

inline const char* to_string(AttenuationMode m) {
  switch (m) {
    case AttenuationMode::kEpoch:
      return "epoch";
    case AttenuationMode::kPerPacket:
      return "per_packet";
    case AttenuationMode::kDeterministic:
      return "deterministic";
  }
  return "?";
}

}  // namespace oagm
