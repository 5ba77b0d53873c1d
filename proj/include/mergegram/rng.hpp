#pragma once

#include <cmath>
#include <cstdint>

namespace mg {

/// splitmix64 with the reference constants (Steele, Lea & Flood). The state
/// advances by 0x9E3779B97F4A7C15 per draw and the output mix is
///   x ^= x >> 30;  x *= 0xBF58476D1CE4E5B9;
///   x ^= x >> 27;  x *= 0x94D049BB133111EB;
///   x ^= x >> 31;
/// so other implementations can reproduce streams from this description
/// alone. All randomized operations in the library draw from this generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  /// Uniform integer in [0, n); n is desk-scale so modulo bias is negligible.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  /// Standard normal via Box-Muller; consumes two fresh uniforms per draw.
  double normal() {
    const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  double normal(double mean, double sigma) { return mean + sigma * normal(); }

  /// Derived deterministic stream for sub-task `index`, independent of how
  /// much the parent stream has been consumed.
  SplitMix64 fork(std::uint64_t index) const {
    return SplitMix64(mix(seed_ + (index + 1) * 0x9E3779B97F4A7C15ULL));
  }

  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace mg
