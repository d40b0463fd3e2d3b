#pragma once

#include <cstdint>
#include <random>

namespace ffn {

/// Seeded random source with a platform-independent uniform draw.
/// std::uniform_real_distribution is implementation-defined, so the
/// [a,b] draw is built directly from the engine's 64-bit output to keep
/// seeded runs reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform draw from the closed interval [a, b]; a == b returns a.
  double uniform(double a, double b) {
    if (a == b) return a;
    const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
  }

  /// Uniform index in [0, n).
  std::size_t index(std::size_t n) { return next() % n; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ffn
