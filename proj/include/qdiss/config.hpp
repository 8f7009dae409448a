#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qdiss/filter.hpp"
#include "qdiss/model.hpp"
#include "qdiss/noise.hpp"

namespace qdiss {

enum class Backend { channel_exact, circuit_noiseless, circuit_noisy };
enum class JumpMode { oft, spectral };

// Full experiment description. `filter` / `grid` left empty mean "auto":
// resolve_config derives them from the exact spectrum the way the protocol
// prescribes (beta = 8/gap, b = -gap/4, a = -2|E0|, s_max = 4pi/(b-a), m_s = 4).
struct ExperimentConfig {
  IsingParams ising{};
  double tau = 4.0;
  double dt = 0.25;  // Delta_t
  int n_t = 4;       // coherent steps per protocol step, must be even
  std::optional<FilterParams> filter;
  std::optional<TimeGrid> grid;
  int shots = 200;   // total per energy estimate; split evenly over the two bases
  std::optional<NoiseModel> noise;
  std::uint64_t seed = 1;
  Backend backend = Backend::channel_exact;
  JumpMode jump = JumpMode::oft;
  int trotter_substeps = 1;  // second-order steps per e^{+-iH delta_s} block
};

void validate(const ExperimentConfig& cfg);

// Fills in auto filter/grid from exact diagonalization. Idempotent.
ExperimentConfig resolve_config(const ExperimentConfig& cfg);

ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig config_from_file(const std::string& path);
std::string config_to_json(const ExperimentConfig& cfg);

std::string backend_name(Backend b);
Backend backend_from_name(const std::string& name);

}  // namespace qdiss
