#pragma once

#include <vector>

#include "qdiss/density.hpp"
#include "qdiss/opalg.hpp"

namespace qdiss {

// Transverse-field Ising chain, open boundary:
//   H = J * sum_{i<N-1} Z_i Z_{i+1} + Bx * sum_i X_i
struct IsingParams {
  int n_sites = 6;
  double exchange = -1.0;    // J
  double transverse = -1.2;  // Bx
};

struct SpectrumSummary {
  double ground_energy = 0.0;  // E0
  double gap = 0.0;            // E_{g0} - E0
  double radius = 0.0;         // max |eigenvalue|
  int degeneracy = 1;          // g0
  std::vector<StateVec> ground_states;
};

inline constexpr int kMaxDenseQubits = 12;

Operator pauli_x();
Operator pauli_y();
Operator pauli_z();
// I (x) ... (x) P (x) ... (x) I with P at `site` of an n-qubit register
// (qubit 0 = most significant bit).
Operator site_operator(int n_qubits, int site, const Operator& p);

Operator build_tfim(const IsingParams& p);

double default_degeneracy_tol(double ground_energy);
SpectrumSummary spectrum_summary(const Operator& h, double degeneracy_tol);

// Tr[rho H]; throws DimMismatchError, NumericalFailureError if the trace has
// an imaginary part beyond roundoff.
double energy_expectation(const DensityMatrix& rho, const Operator& h);

}  // namespace qdiss
