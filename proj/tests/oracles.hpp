#pragma once

// Independent reference implementations used only by tests. These take
// different routes than the library on purpose: a hand-rolled Jacobi
// eigensolver, a naive Kronecker-product Hamiltonian builder, and numerical
// quadrature of the filter's Fourier integral.

#include <cstdint>

#include "qdiss/density.hpp"
#include "qdiss/filter.hpp"
#include "qdiss/opalg.hpp"

namespace oracle {

// Cyclic complex Jacobi diagonalization for Hermitian matrices; throws if the
// off-diagonal mass does not converge.
qdiss::HermitianEigen jacobi_eigh(const qdiss::Operator& a);

// TFIM built from explicit kron chains of 2x2 Paulis.
qdiss::Operator tfim_naive(int n_sites, double exchange, double transverse);

// (1/2pi) Integral of f~(omega) e^{-i omega s} by adaptive Gauss-Kronrod over
// [a - 40/beta, b + 40/beta].
qdiss::Complex filter_time_quadrature(double s, const qdiss::FilterParams& p);

qdiss::Operator random_operator(Eigen::Index dim, std::uint64_t seed);
qdiss::Operator random_hermitian(Eigen::Index dim, std::uint64_t seed);
qdiss::DensityMatrix random_density(Eigen::Index dim, std::uint64_t seed);
qdiss::StateVec random_unit_vector(Eigen::Index dim, std::uint64_t seed);

}  // namespace oracle
