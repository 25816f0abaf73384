#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace rdslab {

using Rng = std::mt19937_64;

/// Concern tags for independent random sub-streams.
enum class StreamTag : std::uint64_t {
  seeding = 1,
  recruitment = 2,
  reporting = 3,
  bootstrap = 4,
  generation = 5,
  grouping = 6,
  tuning = 7,
  calibration = 8,
};

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-style key for deriving reproducible random streams.
///
/// A key is a hash of the master seed and the path of indices that led to it
/// (cell, replication, ...). Streams for different concerns hang off the same
/// key, so a run's recruitment trajectory never depends on how many draws the
/// reporting-error channel consumed.
class StreamKey {
 public:
  constexpr explicit StreamKey(std::uint64_t master_seed) noexcept
      : value_(splitmix64(master_seed)) {}

  constexpr StreamKey child(std::uint64_t index) const noexcept {
    return StreamKey(Raw{}, splitmix64(value_ ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
  }

  Rng stream(StreamTag tag) const {
    return Rng(splitmix64(value_ ^ splitmix64(static_cast<std::uint64_t>(tag))));
  }

  constexpr std::uint64_t value() const noexcept { return value_; }

 private:
  struct Raw {};
  constexpr StreamKey(Raw, std::uint64_t v) noexcept : value_(v) {}

  std::uint64_t value_;
};

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline bool bernoulli(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01(rng) < p;
}

}  // namespace rdslab
