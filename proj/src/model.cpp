#include "qdiss/model.hpp"

#include <cmath>

#include "qdiss/errors.hpp"
#include "qdiss/tol.hpp"

namespace qdiss {

Operator pauli_x() {
  Operator m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Operator pauli_y() {
  Operator m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Operator pauli_z() {
  Operator m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Operator site_operator(int n_qubits, int site, const Operator& p) {
  if (site < 0 || site >= n_qubits)
    throw DimMismatchError("site_operator: site out of range");
  Operator out = Operator::Identity(1, 1);
  for (int q = 0; q < n_qubits; ++q)
    out = kron_op(out, q == site ? p : Operator::Identity(2, 2));
  return out;
}

Operator build_tfim(const IsingParams& p) {
  if (p.n_sites < 1) throw ConfigError("build_tfim: need at least one site");
  if (p.n_sites > kMaxDenseQubits)
    throw DimTooLargeError("build_tfim: dense construction capped at N = 12");
  if (!std::isfinite(p.exchange) || !std::isfinite(p.transverse))
    throw ConfigError("build_tfim: non-finite coupling");

  const int n = p.n_sites;
  const Eigen::Index d = Eigen::Index(1) << n;
  Operator h = Operator::Zero(d, d);
  for (Eigen::Index b = 0; b < d; ++b) {
    double zz = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      const int zi = 1 - 2 * static_cast<int>((b >> (n - 1 - i)) & 1);
      const int zj = 1 - 2 * static_cast<int>((b >> (n - 2 - i)) & 1);
      zz += zi * zj;
    }
    h(b, b) = p.exchange * zz;
    for (int i = 0; i < n; ++i)
      h(b ^ (Eigen::Index(1) << (n - 1 - i)), b) += p.transverse;
  }
  return h;
}

double default_degeneracy_tol(double ground_energy) {
  return 1e-8 * (1.0 + std::abs(ground_energy));
}

SpectrumSummary spectrum_summary(const Operator& h, double degeneracy_tol) {
  HermitianEigen eig = eigh(h);
  SpectrumSummary s;
  const Eigen::Index d = eig.eigenvalues.size();
  s.ground_energy = eig.eigenvalues(0);
  s.radius = std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(d - 1)));
  Eigen::Index g = 1;
  while (g < d && eig.eigenvalues(g) - s.ground_energy <= degeneracy_tol) ++g;
  s.degeneracy = static_cast<int>(g);
  s.gap = (g < d) ? eig.eigenvalues(g) - s.ground_energy : 0.0;
  s.ground_states.reserve(g);
  for (Eigen::Index i = 0; i < g; ++i) s.ground_states.push_back(eig.eigenvectors.col(i));
  return s;
}

double energy_expectation(const DensityMatrix& rho, const Operator& h) {
  if (rho.dim() != h.rows() || h.rows() != h.cols())
    throw DimMismatchError("energy_expectation: dimension mismatch");
  const Complex tr = (rho.rho * h).trace();
  if (std::abs(tr.imag()) > 1e-10 * std::max(1.0, std::abs(tr.real())))
    throw NumericalFailureError("energy_expectation: non-real trace");
  return tr.real();
}

}  // namespace qdiss
