#pragma once

#include <vector>

#include "qdiss/opalg.hpp"

namespace qdiss {

// Hermitian, PSD, unit-trace operator. Construct through the factories so the
// invariants are checked once at the boundary.
struct DensityMatrix {
  Operator rho;

  Eigen::Index dim() const { return rho.rows(); }

  static DensityMatrix pure(const StateVec& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);
  // Product of +1 Pauli-Y eigenstates on n qubits.
  static DensityMatrix y_plus_product(int n_qubits);
  // Validates Hermiticity, trace one and positivity.
  static DensityMatrix validated(const Operator& candidate);
};

// Clamp eigenvalues in [-1e-8, 0) to zero and renormalize the trace. Larger
// negativity signals a bug in the caller and throws NumericalFailureError.
DensityMatrix repair_psd(const Operator& candidate);

double purity(const DensityMatrix& rho);

}  // namespace qdiss
