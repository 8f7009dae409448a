#pragma once

#include <cstdint>

namespace qdiss {

struct ZnePoint {
  int fold_factor = 1;  // G, odd
  double mean = 0.0;
  double stderr_ = 0.0;
};

enum class ZneKind { linear, exponential };

struct ZneFit {
  ZneKind kind = ZneKind::linear;
  double a_tilde = 0.0;
  double b_tilde = 0.0;
  double extrapolated = 0.0;  // value at G -> 0
  double uncertainty = 0.0;
  bool fallback = false;  // exponential fit fell back to linear (mixed signs)
};

// Exact two-point linear extrapolation from G = 1 and G = 3:
//   E(0) = (3 y1 - y3) / 2, uncertainty = sqrt((1.5 s1)^2 + (0.5 s3)^2)
ZneFit zne_linear(const ZnePoint& p1, const ZnePoint& p3);

// Three-point fit of a exp(bG) at G = 1, 3, 5 via weighted least squares on
// (G, ln|y|); uncertainty from a parametric bootstrap (Gaussian resampling of
// the points, deterministic under the seed). Falls back to the linear fit when
// the means do not share a sign.
ZneFit zne_exponential(const ZnePoint& p1, const ZnePoint& p3, const ZnePoint& p5,
                       int bootstrap_resamples = 1000,
                       std::uint64_t seed = 0x5EED);

}  // namespace qdiss
