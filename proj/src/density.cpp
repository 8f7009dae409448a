#include "qdiss/density.hpp"

#include <cmath>

#include "qdiss/errors.hpp"
#include "qdiss/tol.hpp"

namespace qdiss {

DensityMatrix DensityMatrix::pure(const StateVec& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw NumericalFailureError("pure: zero state vector");
  StateVec v = psi / n;
  return {v * v.adjoint()};
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return {Operator::Identity(dim, dim) / static_cast<double>(dim)};
}

DensityMatrix DensityMatrix::y_plus_product(int n_qubits) {
  StateVec v(1);
  v(0) = 1.0;
  StateVec yplus(2);
  yplus << Complex(1.0 / std::sqrt(2.0), 0.0), Complex(0.0, 1.0 / std::sqrt(2.0));
  for (int i = 0; i < n_qubits; ++i) {
    StateVec next(v.size() * 2);
    for (Eigen::Index j = 0; j < v.size(); ++j) {
      next(2 * j) = v(j) * yplus(0);
      next(2 * j + 1) = v(j) * yplus(1);
    }
    v = next;
  }
  return pure(v);
}

DensityMatrix DensityMatrix::validated(const Operator& candidate) {
  if (!valid_operator(candidate))
    throw DimMismatchError("density matrix: not a finite power-of-two operator");
  if ((candidate - candidate.adjoint()).norm() >
      tol.hermitian * std::max(candidate.norm(), 1.0))
    throw NotHermitianError("density matrix: not Hermitian");
  if (std::abs(candidate.trace().real() - 1.0) > tol.trace ||
      std::abs(candidate.trace().imag()) > tol.trace)
    throw NumericalFailureError("density matrix: trace is not one");
  HermitianEigen eig = eigh(candidate);
  if (eig.eigenvalues(0) < -tol.psd_fail)
    throw NotPsdError("density matrix: negative eigenvalue " +
                      std::to_string(eig.eigenvalues(0)));
  return {candidate};
}

DensityMatrix repair_psd(const Operator& candidate) {
  Operator herm = 0.5 * (candidate + candidate.adjoint());
  HermitianEigen eig = eigh(herm);
  if (eig.eigenvalues(0) < -tol.psd_fail)
    throw NumericalFailureError("repair_psd: negativity " +
                                std::to_string(eig.eigenvalues(0)) +
                                " exceeds roundoff budget");
  RealVec lam = eig.eigenvalues.cwiseMax(0.0);
  const double total = lam.sum();
  if (total <= 0.0) throw NumericalFailureError("repair_psd: zero trace");
  lam /= total;
  return {eig.eigenvectors * lam.asDiagonal() * eig.eigenvectors.adjoint()};
}

double purity(const DensityMatrix& rho) {
  return (rho.rho * rho.rho).trace().real();
}

}  // namespace qdiss
