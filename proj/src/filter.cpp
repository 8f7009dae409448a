#include "qdiss/filter.hpp"

#include <cmath>

#include "qdiss/errors.hpp"
#include "qdiss/tol.hpp"

namespace qdiss {

namespace {

// Fermi factor 1/(e^x + 1), evaluated on the decaying branch.
double fermi(double x) {
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

}  // namespace

void validate(const FilterParams& p) {
  if (!(p.edge_low < p.edge_high))
    throw WindowInvertedError("filter window: a >= b");
  if (!(p.edge_high < 0.0))
    throw WindowInvertedError("filter window: b must be negative");
  if (!(p.beta > 0.0)) throw ConfigError("filter window: beta must be positive");
}

double filter_freq(double omega, const FilterParams& p) {
  if (p.mode == FilterMode::rectangular)
    return (p.edge_low <= omega && omega <= p.edge_high) ? 1.0 : 0.0;
  return fermi(p.beta * (omega - p.edge_high)) - fermi(p.beta * (omega - p.edge_low));
}

Complex filter_time(double s, const FilterParams& p) {
  const double a = p.edge_low;
  const double b = p.edge_high;
  if (s == 0.0) return Complex((b - a) / (2.0 * M_PI), 0.0);

  const double x = 0.5 * (b - a) * s;
  // sin(x)/s and beta*sinh(pi s/beta)/s, both regular at s = 0
  const double num_over_s =
      (std::abs(x) < 1e-8) ? 0.5 * (b - a) * (1.0 - x * x / 6.0) : std::sin(x) / s;
  double den_over_s;
  if (p.mode == FilterMode::rectangular) {
    den_over_s = M_PI;
  } else {
    const double y = M_PI * s / p.beta;
    den_over_s =
        (std::abs(y) < 1e-6) ? M_PI * (1.0 + y * y / 6.0) : p.beta * std::sinh(y) / s;
  }
  const double ratio = num_over_s / den_over_s;  // 0 when sinh overflows
  const double ph = -0.5 * (b + a) * s;
  return Complex(std::cos(ph), std::sin(ph)) * ratio;
}

FilterParams default_params(const SpectrumSummary& spec) {
  if (!(spec.gap > 0.0))
    throw DegenerateGapError("default_params: excitation gap must be positive");
  FilterParams p;
  p.beta = 8.0 / spec.gap;
  p.edge_high = -spec.gap / 4.0;  // b = -2/beta
  p.edge_low = -2.0 * std::abs(spec.ground_energy);
  p.mode = FilterMode::fermi_dirac;
  if (!(p.edge_low < p.edge_high))
    throw WindowInvertedError("default_params: a >= b for this spectrum");
  return p;
}

TimeGrid default_grid(const FilterParams& p) {
  validate(p);
  TimeGrid g;
  g.m_s = 4;
  g.delta_s = M_PI / (p.edge_high - p.edge_low);
  return g;
}

FilterSamples sample_filter(const FilterParams& p, const TimeGrid& g) {
  validate(p);
  if (g.m_s < 0 || !(g.delta_s > 0.0))
    throw ConfigError("sample_filter: invalid time grid");
  FilterSamples out;
  out.m_s = g.m_s;
  out.delta_s = g.delta_s;
  const int n = 2 * g.m_s + 1;
  out.s.reserve(n);
  out.f.reserve(n);
  out.abs_f.reserve(n);
  out.phase.reserve(n);
  for (int l = -g.m_s; l <= g.m_s; ++l) {
    const double s = l * g.delta_s;
    const Complex f = filter_time(s, p);
    out.s.push_back(s);
    out.f.push_back(f);
    const double mag = std::abs(f);
    out.abs_f.push_back(mag);
    out.phase.push_back(mag > tol.abs_zero ? std::arg(f) : 0.0);
  }
  return out;
}

Complex dft_filter(const FilterSamples& samples, double omega) {
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double ph = omega * samples.s[i];
    acc += samples.delta_s * samples.f[i] * Complex(std::cos(ph), std::sin(ph));
  }
  return acc;
}

double aliasing_bound(const FilterParams& p, const TimeGrid& g, double norm_h,
                      double norm_a, int n_qubits) {
  validate(p);
  if (norm_a == 0.0) return 0.0;
  const double beta = p.beta;
  const double width = p.edge_high - p.edge_low;
  // log-space evaluation: e^{-beta a} alone can overflow long before the
  // full product does
  double ln = std::log(norm_a);
  ln += -beta * p.edge_low + std::log1p(-std::exp(-beta * width));
  ln -= std::log1p(-std::exp(-2.0 * M_PI * beta / g.delta_s));
  ln += n_qubits * std::log(4.0);
  ln += -2.0 * beta * (M_PI / g.delta_s - norm_h);
  return std::exp(ln);
}

double leakage_bound(const FilterParams& p, const TimeGrid& g) {
  validate(p);
  const double beta = p.beta;
  const double s_max = g.s_max();
  const double tail = std::exp(-M_PI * s_max / beta);
  const double range_term = -std::expm1(-2.0 * M_PI * s_max / beta);
  const double step_term = -std::expm1(-M_PI * g.delta_s / beta);
  return 4.0 / (beta * range_term * step_term) * tail;
}

}  // namespace qdiss
