#include "qdiss/mitigation.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "qdiss/errors.hpp"
#include "qdiss/rng.hpp"

namespace qdiss {

namespace {

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

struct LogFit {
  double intercept;
  double slope;
};

// weighted least squares of ln|y| against G; sigma_ln = stderr/|y|
LogFit fit_log(const std::array<double, 3>& g, const std::array<double, 3>& y,
               const std::array<double, 3>& s) {
  std::array<double, 3> w{};
  bool weighted = true;
  for (int i = 0; i < 3; ++i) weighted = weighted && s[i] > 0.0;
  for (int i = 0; i < 3; ++i) {
    const double sigma_ln = weighted ? s[i] / std::abs(y[i]) : 1.0;
    w[i] = 1.0 / (sigma_ln * sigma_ln);
  }
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < 3; ++i) {
    const double ly = std::log(std::abs(y[i]));
    sw += w[i];
    sx += w[i] * g[i];
    sy += w[i] * ly;
    sxx += w[i] * g[i] * g[i];
    sxy += w[i] * g[i] * ly;
  }
  const double denom = sw * sxx - sx * sx;
  const double slope = (sw * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / sw;
  return {intercept, slope};
}

}  // namespace

ZneFit zne_linear(const ZnePoint& p1, const ZnePoint& p3) {
  if (p1.fold_factor != 1 || p3.fold_factor != 3)
    throw WrongFoldFactorsError("zne_linear: expected points at G = 1 and G = 3");
  ZneFit fit;
  fit.kind = ZneKind::linear;
  fit.a_tilde = 0.5 * (p3.mean - p1.mean);        // slope
  fit.b_tilde = 0.5 * (3.0 * p1.mean - p3.mean);  // intercept = value at G = 0
  fit.extrapolated = fit.b_tilde;
  fit.uncertainty = std::sqrt(1.5 * 1.5 * p1.stderr_ * p1.stderr_ +
                              0.5 * 0.5 * p3.stderr_ * p3.stderr_);
  return fit;
}

ZneFit zne_exponential(const ZnePoint& p1, const ZnePoint& p3, const ZnePoint& p5,
                       int bootstrap_resamples, std::uint64_t seed) {
  if (p1.fold_factor != 1 || p3.fold_factor != 3 || p5.fold_factor != 5)
    throw WrongFoldFactorsError("zne_exponential: expected points at G = 1, 3, 5");

  const std::array<double, 3> g{1.0, 3.0, 5.0};
  const std::array<double, 3> means{p1.mean, p3.mean, p5.mean};
  const std::array<double, 3> errs{p1.stderr_, p3.stderr_, p5.stderr_};

  const int s1 = sign_of(means[0]);
  const bool consistent = s1 != 0 && sign_of(means[1]) == s1 && sign_of(means[2]) == s1;
  if (consistent) {
    for (double y : means)
      if (std::abs(y) < 10.0 * std::numeric_limits<double>::min())
        throw DegenerateDataError("zne_exponential: mean too small for a log fit");
  }

  // central fit, resample-aware so the bootstrap reuses it
  auto fit_once = [&](const std::array<double, 3>& y, ZneFit& out) {
    const int sgn = sign_of(y[0]);
    const bool ok = sgn != 0 && sign_of(y[1]) == sgn && sign_of(y[2]) == sgn;
    if (!ok) {
      ZnePoint q1{1, y[0], errs[0]};
      ZnePoint q3{3, y[1], errs[1]};
      out = zne_linear(q1, q3);
      out.fallback = true;
      return;
    }
    const LogFit lf = fit_log(g, y, errs);
    out.kind = ZneKind::exponential;
    out.fallback = false;
    out.a_tilde = sgn * std::exp(lf.intercept);
    out.b_tilde = lf.slope;
    out.extrapolated = out.a_tilde;
  };

  ZneFit fit;
  fit_once(means, fit);

  bool any_spread = false;
  for (double s : errs) any_spread = any_spread || s > 0.0;
  if (!any_spread || bootstrap_resamples < 2) {
    fit.uncertainty = 0.0;
    return fit;
  }

  SplitMix rng{mix_seed(seed, 0x2AE)};
  std::vector<double> draws;
  draws.reserve(bootstrap_resamples);
  for (int r = 0; r < bootstrap_resamples; ++r) {
    std::array<double, 3> y{};
    for (int i = 0; i < 3; ++i) y[i] = means[i] + errs[i] * rng.gaussian();
    ZneFit resample;
    fit_once(y, resample);
    draws.push_back(resample.extrapolated);
  }
  double mean = 0.0;
  for (double d : draws) mean += d;
  mean /= draws.size();
  double ss = 0.0;
  for (double d : draws) ss += (d - mean) * (d - mean);
  fit.uncertainty = std::sqrt(ss / (draws.size() - 1));
  return fit;
}

}  // namespace qdiss
