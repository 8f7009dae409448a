#include "qdiss/opalg.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qdiss/errors.hpp"
#include "qdiss/model.hpp"

using namespace qdiss;

TEST_CASE("eigh identity and Pauli X") {
  const HermitianEigen id = eigh(Operator::Identity(2, 2));
  CHECK(id.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(id.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));

  const HermitianEigen x = eigh(pauli_x());
  CHECK(x.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(x.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigh reconstruction and orthonormality invariants") {
  const Operator a = oracle::random_hermitian(16, 11);
  const HermitianEigen eig = eigh(a);
  const Operator rebuilt =
      eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.adjoint();
  CHECK(spectral_norm(rebuilt - a) <= 1e-10 * spectral_norm(a) + 1e-14);
  const Operator gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
  CHECK(spectral_norm(gram - Operator::Identity(16, 16)) <= 1e-10);
  for (Eigen::Index i = 1; i < eig.eigenvalues.size(); ++i)
    CHECK(eig.eigenvalues(i) >= eig.eigenvalues(i - 1));
}

TEST_CASE("eigh rejects non-Hermitian input") {
  Operator bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(eigh(bad), NotHermitianError);
}

TEST_CASE("eigh matches an independently written dense diagonalizer on the TFIM") {
  const Operator h = build_tfim({4, -1.0, -1.2});
  const HermitianEigen ours = eigh(h);
  const HermitianEigen ref = oracle::jacobi_eigh(h);
  REQUIRE(ours.eigenvalues.size() == 16);
  for (Eigen::Index i = 0; i < 16; ++i)
    CHECK(std::abs(ours.eigenvalues(i) - ref.eigenvalues(i)) <= 1e-9);
  // golden ground energy, frozen from the oracle
  CHECK(ours.eigenvalues(0) == doctest::Approx(-5.4315195827375).epsilon(1e-9));
}

TEST_CASE("matfun_psd limit cases") {
  const Operator zero = Operator::Zero(4, 4);
  CHECK(spectral_norm(matfun_psd(zero, MatFun::cos_sqrt) - Operator::Identity(4, 4)) <= 1e-12);
  CHECK(spectral_norm(matfun_psd(zero, MatFun::sinc_sqrt) - Operator::Identity(4, 4)) <= 1e-12);

  const Operator pi2 = (M_PI * M_PI) * Operator::Identity(2, 2);
  CHECK(spectral_norm(matfun_psd(pi2, MatFun::cos_sqrt) + Operator::Identity(2, 2)) <= 1e-12);
}

TEST_CASE("matfun_psd satisfies cos^2 + A sinc^2 = I on a random PSD input") {
  Operator m = oracle::random_operator(8, 5);
  const Operator a = m * m.adjoint();  // PSD
  const Operator c = matfun_psd(a, MatFun::cos_sqrt);
  const Operator s = matfun_psd(a, MatFun::sinc_sqrt);
  CHECK(spectral_norm(c * c + a * s * s - Operator::Identity(8, 8)) <= 1e-10);
}

TEST_CASE("matfun_psd spectral mapping") {
  Operator m = oracle::random_operator(8, 21);
  const Operator a = m * m.adjoint();
  const HermitianEigen in = eigh(a);
  const HermitianEigen out = eigh(matfun_psd(a, MatFun::sqrt));
  // sqrt is monotone, so sorted eigenvalues map elementwise
  for (Eigen::Index i = 0; i < 8; ++i)
    CHECK(out.eigenvalues(i) ==
          doctest::Approx(std::sqrt(std::max(0.0, in.eigenvalues(i)))).epsilon(1e-10));
}

TEST_CASE("matfun_psd rejects indefinite input") {
  CHECK_THROWS_AS(matfun_psd(pauli_z(), MatFun::sqrt), NotPsdError);
}

TEST_CASE("expm_hermitian basics") {
  const Operator h = oracle::random_hermitian(8, 3);
  CHECK(spectral_norm(expm_hermitian(h, 0.0, -1) - Operator::Identity(8, 8)) <= 1e-12);

  const Operator uz = expm_hermitian(pauli_z(), M_PI, -1);
  CHECK(spectral_norm(uz + Operator::Identity(2, 2)) <= 1e-12);

  const Operator h2 = build_tfim({2, -1.0, -1.2});
  const Operator u = expm_hermitian(h2, 0.37, -1);
  const Operator v = expm_hermitian(h2, -0.37, -1);
  CHECK(spectral_norm(u * v - Operator::Identity(4, 4)) <= 1e-12);
}

TEST_CASE("expm_hermitian is unitary for random Hermitian generators") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const Operator h = oracle::random_hermitian(16, seed);
    const Operator u = expm_hermitian(h, 1.7, +1);
    CHECK(spectral_norm(u.adjoint() * u - Operator::Identity(16, 16)) <= 1e-10);
  }
}

TEST_CASE("kron block structure") {
  const Operator i4 = kron_op(Operator::Identity(2, 2), Operator::Identity(2, 2));
  CHECK(spectral_norm(i4 - Operator::Identity(4, 4)) == 0.0);

  Operator raise(2, 2);
  raise << 0, 0, 1, 0;  // |1><0|
  const Operator block = kron_op(raise, pauli_x());
  CHECK(spectral_norm(block.bottomLeftCorner(2, 2) - pauli_x()) <= 1e-15);
  CHECK(spectral_norm(block.topLeftCorner(2, 2)) == 0.0);
  CHECK(spectral_norm(block.topRightCorner(2, 2)) == 0.0);
  CHECK(spectral_norm(block.bottomRightCorner(2, 2)) == 0.0);
}

TEST_CASE("kron mixed-product property") {
  const Operator a = oracle::random_operator(2, 41);
  const Operator b = oracle::random_operator(2, 42);
  const Operator c = oracle::random_operator(2, 43);
  const Operator d = oracle::random_operator(2, 44);
  CHECK(spectral_norm(kron_op(a, b) * kron_op(c, d) - kron_op(a * c, b * d)) <= 1e-12);
}

TEST_CASE("kron index formula across dims") {
  for (Eigen::Index da : {2, 4, 8}) {
    for (Eigen::Index db : {2, 4, 8}) {
      const Operator a = oracle::random_operator(da, 100 + da);
      const Operator b = oracle::random_operator(db, 200 + db);
      const Operator k = kron_op(a, b);
      REQUIRE(k.rows() == da * db);
      for (Eigen::Index i = 0; i < da; ++i)
        for (Eigen::Index l = 0; l < db; ++l)
          CHECK(std::abs(k(i * db + l, (da - 1) * db + l) - a(i, da - 1) * b(l, l)) <= 1e-15);
    }
  }
}

TEST_CASE("valid_operator checks dims and finiteness") {
  CHECK(valid_operator(Operator::Identity(8, 8)));
  CHECK_FALSE(valid_operator(Operator::Identity(3, 3)));
  Operator nan2 = Operator::Zero(2, 2);
  nan2(0, 0) = std::nan("");
  CHECK_FALSE(valid_operator(nan2));
}
