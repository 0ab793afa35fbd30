#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>
#include <random>
#include <string_view>

namespace qswarm::rng {

/// SplitMix64 step; advances `state` and returns the next output.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Deterministically combines a seed with a salt (hash_combine style).
inline std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t s = seed ^ (salt + 0x9E3779B97F4A7C15ull + (seed << 6) + (seed >> 2));
  return splitmix64(s);
}

/// FNV-1a over a byte string; used to fold textual ids into seed material.
inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

/// Seeded generator with self-contained uniform/normal/bounded draws.
/// mt19937_64 output is pinned by the standard, and the derived draws below
/// avoid std::*_distribution, so sequences are identical across platforms.
class Engine {
 public:
  explicit Engine(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n); rejection sampling keeps it unbiased.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  /// Standard normal via Box-Muller (pairs cached).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qswarm::rng
