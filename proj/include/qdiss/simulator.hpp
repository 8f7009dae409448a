#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qdiss/circuit.hpp"
#include "qdiss/density.hpp"
#include "qdiss/noise.hpp"
#include "qdiss/rng.hpp"

namespace qdiss {

// Statevector on n qubits; qubit 0 is the most significant bit of the
// amplitude index. Unit norm is maintained across gates and collapses.
struct PureState {
  int n_qubits = 0;
  std::vector<Complex> amplitudes;

  explicit PureState(int n);
  double norm() const;
};

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  long shots = 0;
};

inline constexpr int kMaxTrajectoryQubits = 24;
inline constexpr int kMaxDensityQubits = 10;

// One stochastic trajectory. Deterministic in (circuit, noise, seed):
// measurements collapse by the Born rule, each RZZ is followed by a
// depolarizing insertion with probability p2q (uniform over the 15
// non-identity two-qubit Paulis), and SPAM flips act on every preparation
// and on every recorded measurement bit.
std::vector<std::uint8_t> run_shot(const Circuit& c,
                                   const std::optional<NoiseModel>& noise,
                                   std::uint64_t seed);

// Exact CPTP execution (<= 10 qubits). Measurements dephase; a conditional X
// reading an earlier measurement is folded into the matching branch pair.
// `measure_p0` (optional) receives, per Measure gate in order, the
// probability that the recorded bit is zero.
DensityMatrix density_run(const Circuit& c, const std::optional<NoiseModel>& noise,
                          std::vector<double>* measure_p0 = nullptr);

// Shot-based energy estimate at protocol step m: the ZZ- and X-basis
// circuits each receive shots_per_basis trajectories; per-shot term sums keep
// the within-basis covariance in the error estimate.
Estimate estimate_energy(const ExperimentConfig& cfg, int m, long shots_per_basis,
                         const std::optional<NoiseModel>& noise, int fold_factor,
                         std::uint64_t master_seed);

}  // namespace qdiss
