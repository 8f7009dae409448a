#include "qdiss/channel.hpp"

#include <cmath>

#include "qdiss/errors.hpp"
#include "qdiss/tol.hpp"

namespace qdiss {

JumpOperator jump_spectral(const HermitianEigen& eig, const Operator& a,
                           const FilterParams& p, int couple_site) {
  const Eigen::Index d = eig.eigenvalues.size();
  if (a.rows() != d || a.cols() != d)
    throw DimMismatchError("jump_spectral: dimension mismatch");
  Operator a_eig = eig.eigenvectors.adjoint() * a * eig.eigenvectors;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      a_eig(i, j) *= filter_freq(eig.eigenvalues(i) - eig.eigenvalues(j), p);
  return {eig.eigenvectors * a_eig * eig.eigenvectors.adjoint(),
          JumpConstruction::spectral, couple_site};
}

JumpOperator jump_oft(const HermitianEigen& eig, const Operator& a,
                      const FilterSamples& samples, int couple_site) {
  const Eigen::Index d = eig.eigenvalues.size();
  if (a.rows() != d || a.cols() != d)
    throw DimMismatchError("jump_oft: dimension mismatch");
  Operator k = Operator::Zero(d, d);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Operator u = expm_hermitian(eig, samples.s[i], +1);
    k += samples.delta_s * samples.f[i] * (u * a * u.adjoint());
  }
  return {std::move(k), JumpConstruction::oft_discrete, couple_site};
}

JumpOperator jump_oft(const Operator& h, const Operator& a,
                      const FilterSamples& samples, int couple_site) {
  return jump_oft(eigh(h), a, samples, couple_site);
}

KrausPair kraus_from_jump(const JumpOperator& k, double tau) {
  if (!(tau > 0.0)) throw ConfigError("kraus_from_jump: tau must be positive");
  const Operator kk = tau * (k.k.adjoint() * k.k);
  KrausPair kp;
  kp.tau = tau;
  kp.m0 = matfun_psd(kk, MatFun::cos_sqrt);
  kp.m1 = Complex(0.0, -std::sqrt(tau)) * (k.k * matfun_psd(kk, MatFun::sinc_sqrt));
  return kp;
}

KrausPair kraus_from_dilated(const Operator& w, double tau) {
  const Eigen::Index d2 = w.rows();
  if (d2 % 2 != 0 || w.cols() != d2)
    throw DimMismatchError("kraus_from_dilated: expected even-dimensional square W");
  const Eigen::Index d = d2 / 2;
  return {w.topLeftCorner(d, d), w.bottomLeftCorner(d, d), tau};
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausPair& kp) {
  if (kp.m0.rows() != rho.dim())
    throw DimMismatchError("apply_channel: dimension mismatch");
  Operator out = kp.m0 * rho.rho * kp.m0.adjoint() + kp.m1 * rho.rho * kp.m1.adjoint();
  return repair_psd(out);
}

Operator dilated_unitary_exact(const JumpOperator& k, double tau) {
  if (tau < 0.0) throw ConfigError("dilated_unitary_exact: tau must be nonnegative");
  const Eigen::Index d = k.k.rows();
  Operator cal_k = Operator::Zero(2 * d, 2 * d);
  cal_k.topRightCorner(d, d) = k.k.adjoint();
  cal_k.bottomLeftCorner(d, d) = k.k;
  return expm_hermitian(cal_k, std::sqrt(tau), -1);
}

Operator dilated_unitary_discrete(const FilterSamples& samples,
                                  const HermitianEigen& eig, const Operator& a,
                                  double tau, bool keep_endpoints) {
  const Eigen::Index d = eig.eigenvalues.size();
  if (a.rows() != d || a.cols() != d)
    throw DimMismatchError("dilated_unitary_discrete: dimension mismatch");
  const int m_s = samples.m_s;
  const double sqrt_tau = std::sqrt(tau);
  const HermitianEigen xa = eigh([&] {
    Operator x(2, 2);
    x << 0, 1, 1, 0;
    Operator m = Operator::Zero(2 * d, 2 * d);
    m.topRightCorner(d, d) = a;
    m.bottomLeftCorner(d, d) = a;
    return m;
  }());

  auto interaction = [&](int idx, bool doubled) {
    const double angle = 0.5 * sqrt_tau * samples.delta_s * samples.abs_f[idx] *
                         (doubled ? 2.0 : 1.0);
    return expm_hermitian(xa, angle, -1);
  };
  auto ancilla_rz = [&](double phi) {
    Operator m = Operator::Identity(2 * d, 2 * d);
    const Complex lower = std::exp(Complex(0.0, -0.5 * phi));
    const Complex upper = std::exp(Complex(0.0, +0.5 * phi));
    m.topLeftCorner(d, d) *= lower;
    m.bottomRightCorner(d, d) *= upper;
    return m;
  };
  auto system_evolution = [&](double t, int sign) {
    Operator u = expm_hermitian(eig, t, sign);
    Operator m = Operator::Zero(2 * d, 2 * d);
    m.topLeftCorner(d, d) = u;
    m.bottomRightCorner(d, d) = u;
    return m;
  };

  // Applied order: l ascends -m_s..m_s, doubled interaction at the turning
  // point, then descends back. The endpoint evolutions e^{+-iH s_max} appear
  // only at the outer edges.
  Operator w = Operator::Identity(2 * d, 2 * d);
  auto apply = [&w](const Operator& m) { w = m * w; };

  if (keep_endpoints) apply(system_evolution(samples.s.front(), -1));
  apply(ancilla_rz(-samples.phase.front()));
  for (int idx = 0; idx < 2 * m_s; ++idx) {
    apply(interaction(idx, false));
    apply(ancilla_rz(samples.phase[idx] - samples.phase[idx + 1]));
    apply(system_evolution(samples.delta_s, -1));
  }
  apply(interaction(2 * m_s, true));
  for (int idx = 2 * m_s - 1; idx >= 0; --idx) {
    apply(system_evolution(samples.delta_s, +1));
    apply(ancilla_rz(samples.phase[idx + 1] - samples.phase[idx]));
    apply(interaction(idx, false));
  }
  apply(ancilla_rz(samples.phase.front()));
  if (keep_endpoints) apply(system_evolution(samples.s.front(), +1));
  return w;
}

DensityMatrix apply_dilated(const DensityMatrix& rho, const Operator& w) {
  const Eigen::Index d = rho.dim();
  if (w.rows() != 2 * d) throw DimMismatchError("apply_dilated: dimension mismatch");
  Operator total = Operator::Zero(2 * d, 2 * d);
  total.topLeftCorner(d, d) = rho.rho;  // ancilla prepared in |0>
  total = w * total * w.adjoint();
  return repair_psd(total.topLeftCorner(d, d) + total.bottomRightCorner(d, d));
}

DensityMatrix apply_coherent(const DensityMatrix& rho, const Operator& h, double t) {
  if (h.rows() != rho.dim()) throw DimMismatchError("apply_coherent: dimension mismatch");
  const Operator u = expm_hermitian(h, t, -1);
  return {u * rho.rho * u.adjoint()};
}

DensityMatrix dissipative_step(const DensityMatrix& rho, const Operator& h,
                               const KrausPair& kp, double t_half) {
  DensityMatrix state = apply_coherent(rho, h, t_half);
  state = apply_channel(state, kp);
  return apply_coherent(state, h, t_half);
}

double fidelity_pure(const DensityMatrix& rho, const StateVec& ground) {
  if (ground.size() != rho.dim()) throw DimMismatchError("fidelity_pure: dimension mismatch");
  if (std::abs(ground.norm() - 1.0) > 1e-8)
    throw NumericalFailureError("fidelity_pure: ground vector not normalized");
  const double overlap = (ground.adjoint() * rho.rho * ground)(0).real();
  return std::sqrt(std::max(overlap, 0.0));
}

std::pair<double, double> ancilla_probs(const DensityMatrix& rho, const KrausPair& kp) {
  if (kp.m0.rows() != rho.dim()) throw DimMismatchError("ancilla_probs: dimension mismatch");
  const double p0 = (kp.m0 * rho.rho * kp.m0.adjoint()).trace().real();
  const double p1 = (kp.m1 * rho.rho * kp.m1.adjoint()).trace().real();
  return {p0, p1};
}

double lindblad_defect(const DensityMatrix& rho, const JumpOperator& k, double tau) {
  if (!(tau > 0.0)) throw ConfigError("lindblad_defect: tau must be positive");
  const KrausPair kp = kraus_from_jump(k, tau);
  const Operator evolved =
      kp.m0 * rho.rho * kp.m0.adjoint() + kp.m1 * rho.rho * kp.m1.adjoint();
  const Operator kk = k.k.adjoint() * k.k;
  const Operator lindblad = rho.rho + tau * (k.k * rho.rho * k.k.adjoint()) -
                            0.5 * tau * (kk * rho.rho + rho.rho * kk);
  return spectral_norm(evolved - lindblad);
}

}  // namespace qdiss
