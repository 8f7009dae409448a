#include "qdiss/opalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "qdiss/errors.hpp"
#include "qdiss/tol.hpp"

namespace qdiss {

bool valid_operator(const Operator& m) {
  if (m.rows() != m.cols() || m.rows() < 1) return false;
  auto d = static_cast<unsigned long long>(m.rows());
  if ((d & (d - 1)) != 0) return false;
  return m.allFinite();
}

double spectral_norm(const Operator& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::BDCSVD<Operator> svd(m);
  return svd.singularValues()(0);
}

HermitianEigen eigh(const Operator& a) {
  if (a.rows() != a.cols()) throw DimMismatchError("eigh: operator not square");
  // Frobenius norms stand in for the spectral-norm condition here; they agree
  // up to a sqrt(d) factor and avoid a second O(d^3) factorization.
  const double scale = a.norm();
  const double defect = (a - a.adjoint()).norm();
  if (defect > tol.hermitian * std::max(scale, 1.0))
    throw NotHermitianError("eigh: input is not Hermitian (defect " +
                            std::to_string(defect) + ")");
  Eigen::SelfAdjointEigenSolver<Operator> solver(a);
  if (solver.info() != Eigen::Success)
    throw NumericalFailureError("eigh: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Operator matfun_psd(const Operator& a, MatFun kind) {
  HermitianEigen eig = eigh(a);
  const double radius = std::max(std::abs(eig.eigenvalues(0)),
                                 std::abs(eig.eigenvalues(eig.eigenvalues.size() - 1)));
  const double min_eig = eig.eigenvalues(0);
  if (min_eig < -tol.psd_fail * std::max(radius, 1.0))
    throw NotPsdError("matfun_psd: min eigenvalue " + std::to_string(min_eig));

  RealVec mapped(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) {
    double lam = std::max(eig.eigenvalues(i), 0.0);
    double x = std::sqrt(lam);
    switch (kind) {
      case MatFun::cos_sqrt:
        mapped(i) = std::cos(x);
        break;
      case MatFun::sinc_sqrt:
        // sin(x)/x with the series branch near zero
        mapped(i) = (x < 1e-8) ? 1.0 - lam / 6.0 : std::sin(x) / x;
        break;
      case MatFun::sqrt:
        mapped(i) = x;
        break;
    }
  }
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint();
}

Operator expm_hermitian(const HermitianEigen& eig, double t, int sign) {
  Eigen::VectorXcd phases(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(Complex(0.0, sign * eig.eigenvalues(i) * t));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

Operator expm_hermitian(const Operator& h, double t, int sign) {
  return expm_hermitian(eigh(h), t, sign);
}

Operator kron_op(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace qdiss
