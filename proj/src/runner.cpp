#include "qdiss/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "qdiss/errors.hpp"

namespace qdiss {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SpectrumReport cmd_spectrum(const ExperimentConfig& cfg) {
  validate(cfg);
  const Operator h = build_tfim(cfg.ising);
  SpectrumSummary spec = spectrum_summary(h, 1e-12);
  spec = spectrum_summary(h, default_degeneracy_tol(spec.ground_energy));
  SpectrumReport report;
  report.summary = spec;
  report.filter = cfg.filter ? *cfg.filter : default_params(spec);
  return report;
}

std::string spectrum_json(const SpectrumReport& r) {
  std::ostringstream os;
  os << "{\n"
     << "  \"E0\": " << format_double(r.summary.ground_energy) << ",\n"
     << "  \"gap\": " << format_double(r.summary.gap) << ",\n"
     << "  \"radius\": " << format_double(r.summary.radius) << ",\n"
     << "  \"g0\": " << r.summary.degeneracy << ",\n"
     << "  \"filter\": {\n"
     << "    \"a\": " << format_double(r.filter.edge_low) << ",\n"
     << "    \"b\": " << format_double(r.filter.edge_high) << ",\n"
     << "    \"beta\": " << format_double(r.filter.beta) << "\n"
     << "  }\n"
     << "}\n";
  return os.str();
}

KrausPair protocol_kraus(const ExperimentConfig& cfg, const HermitianEigen& eig) {
  const Operator coupling = site_operator(cfg.ising.n_sites, 0, pauli_z());
  if (cfg.jump == JumpMode::spectral) {
    const JumpOperator k = jump_spectral(eig, coupling, *cfg.filter);
    return kraus_from_jump(k, cfg.tau);
  }
  const FilterSamples samples = sample_filter(*cfg.filter, *cfg.grid);
  const Operator w =
      dilated_unitary_discrete(samples, eig, coupling, cfg.tau, /*keep_endpoints=*/false);
  return kraus_from_dilated(w, cfg.tau);
}

namespace {

DensityMatrix trace_out_ancilla(const Operator& full) {
  const Eigen::Index d = full.rows() / 2;
  return {full.topLeftCorner(d, d) + full.bottomRightCorner(d, d)};
}

double best_ground_fidelity(const DensityMatrix& rho, const SpectrumSummary& spec) {
  double best = 0.0;
  for (const StateVec& v : spec.ground_states)
    best = std::max(best, fidelity_pure(rho, v));
  return best;
}

std::vector<EvolveRow> evolve_channel(const ExperimentConfig& cfg, int m_max) {
  if (cfg.ising.n_sites > 9)
    throw DimTooLargeError("evolve: channel_exact backend capped at N = 9");
  const Operator h = build_tfim(cfg.ising);
  const HermitianEigen eig = eigh(h);
  SpectrumSummary spec = spectrum_summary(h, 1e-12);
  spec = spectrum_summary(h, default_degeneracy_tol(spec.ground_energy));
  const KrausPair kp = protocol_kraus(cfg, eig);
  const double t_half = cfg.dt * cfg.n_t / 2.0;

  std::vector<EvolveRow> rows;
  DensityMatrix rho = DensityMatrix::y_plus_product(cfg.ising.n_sites);
  rows.push_back({0, energy_expectation(rho, h), best_ground_fidelity(rho, spec), 1.0, 1.0});
  for (int m = 1; m <= m_max; ++m) {
    rho = apply_coherent(rho, h, t_half);
    const auto [p0, p1] = ancilla_probs(rho, kp);
    (void)p1;
    rho = apply_channel(rho, kp);
    rho = apply_coherent(rho, h, t_half);
    rows.push_back({m, energy_expectation(rho, h), best_ground_fidelity(rho, spec), p0,
                    2.0 * p0 - 1.0});
  }
  return rows;
}

}  // namespace

std::vector<EvolveRow> cmd_evolve(const ExperimentConfig& cfg, int m_max) {
  const ExperimentConfig rc = resolve_config(cfg);
  if (m_max < 0) throw ConfigError("evolve: m_max must be nonnegative");
  if (rc.backend == Backend::channel_exact) return evolve_channel(rc, m_max);

  // density-matrix execution of the gate-level protocol
  if (rc.ising.n_sites + 1 > kMaxDensityQubits)
    throw DimTooLargeError("evolve: circuit backends capped at N + 1 = 10 qubits");
  const Operator h = build_tfim(rc.ising);
  SpectrumSummary spec = spectrum_summary(h, 1e-12);
  spec = spectrum_summary(h, default_degeneracy_tol(spec.ground_energy));
  const std::optional<NoiseModel> noise =
      rc.backend == Backend::circuit_noisy ? rc.noise : std::nullopt;

  std::vector<EvolveRow> rows;
  for (int m = 0; m <= m_max; ++m) {
    std::vector<double> probes;
    const Circuit c = build_state_circuit(m, rc);
    const DensityMatrix full = density_run(c, noise, &probes);
    const DensityMatrix sys = trace_out_ancilla(full.rho);
    EvolveRow row;
    row.m = m;
    row.energy = energy_expectation(sys, h);
    row.fidelity = best_ground_fidelity(sys, spec);
    row.p0 = probes.empty() ? 1.0 : probes.back();
    row.z_ancilla = 2.0 * row.p0 - 1.0;
    rows.push_back(row);
  }
  return rows;
}

std::string evolve_csv(const std::vector<EvolveRow>& rows) {
  std::ostringstream os;
  os << "m,E,F,p0,Zanc\n";
  for (const EvolveRow& r : rows)
    os << r.m << ',' << format_double(r.energy) << ',' << format_double(r.fidelity)
       << ',' << format_double(r.p0) << ',' << format_double(r.z_ancilla) << '\n';
  return os.str();
}

ZneReport cmd_zne(const ExperimentConfig& cfg, const std::vector<int>& m_list,
                  const std::vector<int>& fold_factors) {
  const ExperimentConfig rc = resolve_config(cfg);
  if (rc.backend == Backend::channel_exact)
    throw ConfigError("zne: requires a circuit backend");
  for (int g : fold_factors)
    if (g < 1 || g % 2 == 0)
      throw EvenFoldFactorError("zne: fold factors must be odd positive integers");
  const std::optional<NoiseModel> noise =
      rc.backend == Backend::circuit_noisy ? rc.noise : std::nullopt;
  const long shots_per_basis = rc.shots / 2;

  ZneReport report;
  for (int m : m_list) {
    ZnePoint p1{}, p3{}, p5{};
    bool have1 = false, have3 = false, have5 = false;
    for (int g : fold_factors) {
      const Estimate e = estimate_energy(rc, m, shots_per_basis, noise, g, rc.seed);
      report.points.push_back({m, g, e.mean, e.stderr_});
      const ZnePoint point{g, e.mean, e.stderr_};
      if (g == 1) { p1 = point; have1 = true; }
      if (g == 3) { p3 = point; have3 = true; }
      if (g == 5) { p5 = point; have5 = true; }
    }
    if (have1 && have3) {
      const ZneFit lin = zne_linear(p1, p3);
      report.fits.push_back({m, "linear", lin.extrapolated, lin.uncertainty, false});
      if (have5) {
        const ZneFit expf = zne_exponential(
            p1, p3, p5, 1000, mix_seed(rc.seed, 0xE9ULL + static_cast<std::uint64_t>(m)));
        report.fits.push_back({m, expf.fallback ? "linear" : "exponential",
                               expf.extrapolated, expf.uncertainty, expf.fallback});
      }
    }
  }
  return report;
}

std::string zne_points_csv(const ZneReport& report) {
  std::ostringstream os;
  os << "m,G,E,stderr\n";
  for (const ZnePointRow& p : report.points)
    os << p.m << ',' << p.fold_factor << ',' << format_double(p.energy) << ','
       << format_double(p.stderr_) << '\n';
  return os.str();
}

std::string zne_fits_csv(const ZneReport& report) {
  std::ostringstream os;
  os << "m,kind,extrapolated,uncertainty,fallback\n";
  for (const ZneFitRow& f : report.fits)
    os << f.m << ',' << f.kind << ',' << format_double(f.extrapolated) << ','
       << format_double(f.uncertainty) << ',' << (f.fallback ? 1 : 0) << '\n';
  return os.str();
}

FilterReport cmd_filter(const ExperimentConfig& cfg, int mesh_points) {
  const ExperimentConfig rc = resolve_config(cfg);
  const FilterParams& p = *rc.filter;
  const FilterSamples samples = sample_filter(p, *rc.grid);

  std::ostringstream freq;
  freq << "omega,f_exact,f_dft_real,f_dft_imag\n";
  const double width = p.edge_high - p.edge_low;
  const double lo = p.edge_low - 0.25 * width;
  const double hi = p.edge_high + 0.25 * width;
  for (int i = 0; i < mesh_points; ++i) {
    const double omega = lo + (hi - lo) * i / (mesh_points - 1);
    const Complex dft = dft_filter(samples, omega);
    freq << format_double(omega) << ',' << format_double(filter_freq(omega, p)) << ','
         << format_double(dft.real()) << ',' << format_double(dft.imag()) << '\n';
  }

  std::ostringstream time;
  time << "s,re_f,im_f,abs_f\n";
  for (std::size_t i = 0; i < samples.size(); ++i)
    time << format_double(samples.s[i]) << ',' << format_double(samples.f[i].real())
         << ',' << format_double(samples.f[i].imag()) << ','
         << format_double(samples.abs_f[i]) << '\n';

  return {freq.str(), time.str()};
}

std::string cmd_circuit_dump(const ExperimentConfig& cfg, int m, MeasureBasis basis) {
  const ExperimentConfig rc = resolve_config(cfg);
  return circuit_to_text(build_experiment(m, rc, basis));
}

}  // namespace qdiss
