#pragma once

#include <string>
#include <vector>

#include "qdiss/channel.hpp"
#include "qdiss/circuit.hpp"
#include "qdiss/config.hpp"
#include "qdiss/mitigation.hpp"
#include "qdiss/simulator.hpp"

namespace qdiss {

// locale-independent float with 17 significant digits
std::string format_double(double v);

struct SpectrumReport {
  SpectrumSummary summary;
  FilterParams filter;
};

SpectrumReport cmd_spectrum(const ExperimentConfig& cfg);
std::string spectrum_json(const SpectrumReport& report);

struct EvolveRow {
  int m = 0;
  double energy = 0.0;
  double fidelity = 0.0;
  double p0 = 1.0;        // ancilla outcome probability during step m
  double z_ancilla = 1.0; // 2 p0 - 1
};

std::vector<EvolveRow> cmd_evolve(const ExperimentConfig& cfg, int m_max);
std::string evolve_csv(const std::vector<EvolveRow>& rows);

struct ZnePointRow {
  int m = 0;
  int fold_factor = 1;
  double energy = 0.0;
  double stderr_ = 0.0;
};

struct ZneFitRow {
  int m = 0;
  std::string kind;  // "linear" or "exponential"
  double extrapolated = 0.0;
  double uncertainty = 0.0;
  bool fallback = false;
};

struct ZneReport {
  std::vector<ZnePointRow> points;
  std::vector<ZneFitRow> fits;
};

ZneReport cmd_zne(const ExperimentConfig& cfg, const std::vector<int>& m_list,
                  const std::vector<int>& fold_factors);
std::string zne_points_csv(const ZneReport& report);
std::string zne_fits_csv(const ZneReport& report);

struct FilterReport {
  std::string freq_csv;  // omega,f_exact,f_dft_real,f_dft_imag
  std::string time_csv;  // s,re_f,im_f,abs_f
};

FilterReport cmd_filter(const ExperimentConfig& cfg, int mesh_points = 401);

std::string cmd_circuit_dump(const ExperimentConfig& cfg, int m, MeasureBasis basis);

// The per-step Kraus pair the channel_exact backend iterates: the exact CPTP
// map of the discretized, endpoint-dropped dilated unitary (oft mode), or the
// textbook cos/sinc pair of the spectral jump operator (spectral mode).
KrausPair protocol_kraus(const ExperimentConfig& cfg, const HermitianEigen& eig);

}  // namespace qdiss
