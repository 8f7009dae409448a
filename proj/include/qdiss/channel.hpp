#pragma once

#include <utility>

#include "qdiss/density.hpp"
#include "qdiss/filter.hpp"
#include "qdiss/opalg.hpp"

namespace qdiss {

enum class JumpConstruction { spectral, oft_discrete };

// Jump operator on the system register. Engineered so that (with an ideal
// filter) it annihilates the ground state; generally non-Hermitian.
struct JumpOperator {
  Operator k;
  JumpConstruction construction = JumpConstruction::spectral;
  int couple_site = 0;
};

// Two-operator Kraus decomposition of the dissipation channel:
//   M0 = cos sqrt(tau K'K),  M1 = -i sqrt(tau) K sinc sqrt(tau K'K)
struct KrausPair {
  Operator m0;
  Operator m1;
  double tau = 0.0;
};

// K = sum_ij f(E_i - E_j) |E_i><E_i| A |E_j><E_j|
JumpOperator jump_spectral(const HermitianEigen& eig, const Operator& a,
                           const FilterParams& p, int couple_site = 0);

// Discretized operator Fourier transform:
//   K = sum_l delta_s f(s_l) e^{iHs_l} A e^{-iHs_l}
JumpOperator jump_oft(const Operator& h, const Operator& a,
                      const FilterSamples& samples, int couple_site = 0);
JumpOperator jump_oft(const HermitianEigen& eig, const Operator& a,
                      const FilterSamples& samples, int couple_site = 0);

KrausPair kraus_from_jump(const JumpOperator& k, double tau);

// Kraus pair of an arbitrary dilated unitary applied to |0><0|_a (x) rho:
// M0 and M1 are the upper-left and lower-left blocks of W.
KrausPair kraus_from_dilated(const Operator& w, double tau);

// Gamma_K[rho] = M0 rho M0' + M1 rho M1', with PSD repair for roundoff.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausPair& kp);

// W(sqrt(tau)) = exp(-i calK sqrt(tau)) on the 2d-dimensional dilated space;
// the ancilla is the most significant qubit.
Operator dilated_unitary_exact(const JumpOperator& k, double tau);

// Second-order (palindromic) product over the sample grid, Hamiltonian
// evolution blocks evaluated exactly. This is the unitary the gate-level
// builder approaches as its Trotter substeps refine.
Operator dilated_unitary_discrete(const FilterSamples& samples,
                                  const HermitianEigen& eig, const Operator& a,
                                  double tau, bool keep_endpoints);

// Tr_a[W (|0><0|_a (x) rho) W'] evaluated literally on the dilated space.
DensityMatrix apply_dilated(const DensityMatrix& rho, const Operator& w);

DensityMatrix apply_coherent(const DensityMatrix& rho, const Operator& h, double t);

// One protocol step: Gamma_H(t_half) then Gamma_K then Gamma_H(t_half).
DensityMatrix dissipative_step(const DensityMatrix& rho, const Operator& h,
                               const KrausPair& kp, double t_half);

// sqrt(<ground| rho |ground>)
double fidelity_pure(const DensityMatrix& rho, const StateVec& ground);

// (p0, p1) = (Tr[M0 rho M0'], Tr[M1 rho M1']); sums to one.
std::pair<double, double> ancilla_probs(const DensityMatrix& rho, const KrausPair& kp);

// || Gamma_K[rho] - rho - tau K rho K' + (tau/2){K'K, rho} ||, O(tau^2) as
// tau -> 0 (spectral norm).
double lindblad_defect(const DensityMatrix& rho, const JumpOperator& k, double tau);

}  // namespace qdiss
