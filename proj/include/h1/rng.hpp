#pragma once

#include <cstdint>
#include <random>

#include "h1/group.hpp"

namespace h1 {

// All randomized code paths take an explicit seed; there are no wall-clock
// defaults.  Doubles are produced by the 53-bit shift construction rather than
// std::uniform_real_distribution so streams are identical across standard
// library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double unit() {  // in [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * unit(); }

  double log_uniform(double a, double b) {
    return a * std::pow(b / a, unit());
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Random point with gauge drawn log-uniformly from [g_lo, g_hi]: a direction
// is sampled in a box and rescaled by a group dilation.
inline Point random_point(Rng& rng, double g_lo, double g_hi) {
  Point p;
  do {
    p = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  } while (gauge(p) < 1e-3);
  return dilate(rng.log_uniform(g_lo, g_hi) / gauge(p), p);
}

}  // namespace h1
