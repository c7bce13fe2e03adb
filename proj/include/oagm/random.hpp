#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string_view>

namespace oagm {

// SplitMix64 finalizer. Used to derive sub-stream seeds and for counter-based
// draws that must not depend on how many values a stream has produced.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_purpose(std::string_view purpose) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : purpose) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Maps 64 random bits onto [0, 1) using the top 53 bits.
constexpr double bits_to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Deterministic random stream: a 64-bit Mersenne Twister (std::mt19937_64)
/// seeded from a 64-bit key. Conversions to doubles and bounded integers are
/// done here rather than through <random> distributions, whose output is
/// implementation-defined, so streams replay identically across standard
/// libraries.
///
/// Sub-streams are derived from the stream's key, never from its state:
/// `derive("speeds", 7)` yields the same stream no matter how many values the
/// parent has already produced.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : key_(seed), engine_(mix64(seed)) {}

  [[nodiscard]] RandomStream derive(std::string_view purpose,
                                    std::uint64_t index = 0) const {
    return RandomStream(mix64(key_ ^ mix64(hash_purpose(purpose) + mix64(index))));
  }

  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform() { return bits_to_unit(engine_()); }

  /// Uniform in [lo, hi); returns exactly lo when lo == hi.
  double uniform(double lo, double hi) {
    if (hi < lo) throw std::invalid_argument("uniform: hi < lo");
    return lo + (hi - lo) * uniform();
  }

  /// Uniform integer in [0, n), unbiased.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("below: empty range");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r = engine_();
    while (r >= limit) r = engine_();
    return r % n;
  }

 private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
};

/// Stateless uniform draw in [0, 1) keyed by (key, a, b, c).
constexpr double keyed_uniform(std::uint64_t key, std::uint64_t a, std::uint64_t b,
                               std::uint64_t c) noexcept {
  return bits_to_unit(mix64(mix64(mix64(key ^ mix64(a)) ^ mix64(b + 1)) ^ mix64(c + 2)));
}

}  // namespace oagm
