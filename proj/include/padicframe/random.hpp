#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <type_traits>

namespace padicframe {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Seeded generator with platform-independent transforms (the standard
/// distributions are implementation-defined, which would break byte-identical
/// reports across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

  double normal() {
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  template <typename Scalar>
  Scalar gaussian() {
    if constexpr (std::is_floating_point_v<Scalar>) {
      return static_cast<Scalar>(normal());
    } else {
      double re = normal();
      double im = normal();
      return Scalar(re, im) / std::sqrt(2.0);
    }
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace padicframe
