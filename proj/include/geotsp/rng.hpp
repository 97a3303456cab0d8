#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace geotsp {

/// Portable random source for instance generation.
///
/// std::mt19937_64's output sequence is fixed by the standard, but the
/// standard distributions are not, so the conversions live here:
///   uniform01: top 53 bits of one draw, scaled by 2^-53, in [0, 1);
///   normal:    Box-Muller on two uniform01 draws (cosine branch only).
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace geotsp
