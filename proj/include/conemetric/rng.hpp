#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "conemetric/types.hpp"

namespace conemetric {

// Seeded sampling helpers. Distributions are derived from raw mt19937_64
// output, so a fixed seed yields the same stream on every platform and
// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // uniform in (0, 1]
  double uniform_pos() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    const double u = uniform_pos();
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
  }

  // uniform integer in [0, bound)
  std::uint64_t integer(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * bound) >> 64);
  }

  Vector gaussian(Index n) {
    Vector v(n);
    for (Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  Vector on_sphere(Index n) {
    for (;;) {
      Vector v = gaussian(n);
      const double s = v.norm();
      if (s > 1e-12) return v / s;
    }
  }

  // nonnegative weights summing to one
  Vector simplex(Index n) {
    Vector w(n);
    for (Index i = 0; i < n; ++i) w[i] = -std::log(uniform_pos());
    w /= w.sum();
    return w;
  }

 private:
  static constexpr double kPi = 3.14159265358979323846264338327950288;
  std::mt19937_64 engine_;
};

}  // namespace conemetric
