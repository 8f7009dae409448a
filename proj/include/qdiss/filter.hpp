#pragma once

#include <vector>

#include "qdiss/model.hpp"
#include "qdiss/opalg.hpp"

namespace qdiss {

enum class FilterMode { fermi_dirac, rectangular };

// Frequency window selecting energy-lowering transitions. The window edges
// satisfy a < b < 0; beta > 0 controls the edge sharpness.
struct FilterParams {
  double edge_low = 0.0;   // a (energy)
  double edge_high = 0.0;  // b (energy)
  double beta = 0.0;       // inverse broadening (1/energy)
  FilterMode mode = FilterMode::fermi_dirac;
};

void validate(const FilterParams& p);

// Uniform grid s_l = l * delta_s for l = -m_s..m_s; the truncation range is
// stored implicitly as s_max = m_s * delta_s.
struct TimeGrid {
  int m_s = 4;
  double delta_s = 0.0;
  double s_max() const { return m_s * delta_s; }
};

struct FilterSamples {
  std::vector<double> s;        // 2 m_s + 1 points, ascending
  std::vector<Complex> f;       // f(s_l)
  std::vector<double> abs_f;    // |f(s_l)|
  std::vector<double> phase;    // arg f(s_l), 0 where |f| vanishes
  int m_s = 0;
  double delta_s = 0.0;

  std::size_t size() const { return s.size(); }
};

// Window in the frequency domain (Eq. class: difference of two Fermi factors,
// or the sharp indicator in rectangular mode). Overflow-safe for large |beta*omega|.
double filter_freq(double omega, const FilterParams& p);

// Closed-form time-domain filter. fermi_dirac:
//   f(s) = exp(-i (b+a) s / 2) * sin((b-a) s / 2) / (beta * sinh(pi s / beta))
// rectangular uses the beta -> infinity limit with 1/(pi s) in place of the
// sinh factor. f(0) = (b-a)/(2 pi) in both modes.
Complex filter_time(double s, const FilterParams& p);

// beta = 8/gap, b = -gap/4, a = -2|E0|.
FilterParams default_params(const SpectrumSummary& spec);

// s_max = 4 pi / (b - a), m_s = 4.
TimeGrid default_grid(const FilterParams& p);

FilterSamples sample_filter(const FilterParams& p, const TimeGrid& g);

// f_DFT(omega) = sum_l delta_s f(s_l) exp(i omega s_l)
Complex dft_filter(const FilterSamples& samples, double omega);

// Upper bound on the discretization (aliasing) error of the operator Fourier
// transform: ||A|| (e^{-beta a} - e^{-beta b}) / (1 - e^{-2 pi beta / delta_s})
//            * 4^N * e^{-2 beta (pi/delta_s - ||H||)}.
double aliasing_bound(const FilterParams& p, const TimeGrid& g, double norm_h,
                      double norm_a, int n_qubits);

// Upper bound on the truncation (leakage) tail sum_{|l|>m_s} |f(s_l)|:
//   4 / (beta (1 - e^{-2 pi s_max / beta}) (1 - e^{-pi delta_s / beta})) * e^{-pi s_max / beta}
double leakage_bound(const FilterParams& p, const TimeGrid& g);

}  // namespace qdiss
