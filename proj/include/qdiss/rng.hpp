#pragma once

#include <cmath>
#include <cstdint>

namespace qdiss {

// splitmix64 stream; bit-for-bit reproducible on every platform, unlike the
// <random> distributions.
struct SplitMix {
  std::uint64_t state = 0;

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
  double gaussian() {
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
};

// Derives an independent stream seed; mixing the same indices in the same
// order gives the same stream regardless of evaluation order.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  SplitMix s{seed ^ (salt * 0xD1B54A32D192ED03ULL)};
  return s.next();
}

}  // namespace qdiss
