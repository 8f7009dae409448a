#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qdiss {

using Complex = std::complex<double>;

// Dense complex operator on n qubits (dimension 2^n). All operators, states
// and unitaries in the library are carried by this type; qubit 0 is the most
// significant bit of the basis index.
using Operator = Eigen::MatrixXcd;
using StateVec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;

struct HermitianEigen {
  RealVec eigenvalues;    // ascending
  Operator eigenvectors;  // unitary, columns
};

enum class MatFun { cos_sqrt, sinc_sqrt, sqrt };

// True if m is square with dimension 2^n (n >= 0) and all entries finite.
bool valid_operator(const Operator& m);

// Largest singular value.
double spectral_norm(const Operator& m);

// Hermitian eigendecomposition, eigenvalues ascending.
// Throws NotHermitianError / NumericalFailureError.
HermitianEigen eigh(const Operator& a);

// f(A) for PSD Hermitian A through the spectral decomposition. Eigenvalues in
// [-1e-10, 0) are clamped to zero; larger negativity throws NotPsdError.
Operator matfun_psd(const Operator& a, MatFun kind);

// exp(sign * i * H * t) for Hermitian H, sign = +1 or -1.
Operator expm_hermitian(const Operator& h, double t, int sign);
Operator expm_hermitian(const HermitianEigen& eig, double t, int sign);

// Kronecker product, row-major block convention:
// (A (x) B)(i*dimB + k, j*dimB + l) = A(i,j) B(k,l).
Operator kron_op(const Operator& a, const Operator& b);

inline Operator dagger(const Operator& m) { return m.adjoint(); }

}  // namespace qdiss
