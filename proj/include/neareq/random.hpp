// Seeded random source with platform-independent output. The standard
// distributions are implementation-defined, so the mappings live here.
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace neareq {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform in {0, ..., n-1}; n > 0.
  std::uint64_t index(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= threshold) return r % n;
    }
  }

  /// Standard normal (Box-Muller, one value per call).
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform point in the open disk of the given radius, as an offset.
  void in_disk(double radius, double& dx, double& dy) {
    const double r = radius * std::sqrt(uniform());
    const double theta = 2.0 * std::numbers::pi * uniform();
    dx = r * std::cos(theta);
    dy = r * std::sin(theta);
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace neareq
