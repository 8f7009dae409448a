#include "qdiss/channel.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qdiss/errors.hpp"
#include "qdiss/model.hpp"

using namespace qdiss;

namespace {

struct Setup {
  Operator h;
  HermitianEigen eig;
  SpectrumSummary spec;
  Operator coupling;
  FilterParams window;
  TimeGrid grid;
  FilterSamples samples;
};

Setup make_setup(int n, FilterMode mode = FilterMode::fermi_dirac) {
  Setup s;
  s.h = build_tfim({n, -1.0, -1.2});
  s.eig = eigh(s.h);
  s.spec = spectrum_summary(s.h, default_degeneracy_tol(s.eig.eigenvalues(0)));
  s.coupling = site_operator(n, 0, pauli_z());
  s.window = default_params(s.spec);
  s.window.mode = mode;
  s.grid = default_grid(s.window);
  s.samples = sample_filter(s.window, s.grid);
  return s;
}

}  // namespace

TEST_CASE("rectangular spectral jump annihilates every ground vector") {
  for (int n : {2, 3}) {
    Setup s = make_setup(n, FilterMode::rectangular);
    const JumpOperator k = jump_spectral(s.eig, s.coupling, s.window);
    for (const StateVec& v : s.spec.ground_states)
      CHECK((k.k * v).norm() <= 1e-10);
  }
  // degenerate ground manifold (zero transverse field)
  const Operator h = build_tfim({2, -1.0, 0.0});
  const HermitianEigen eig = eigh(h);
  const SpectrumSummary spec = spectrum_summary(h, 1e-8);
  REQUIRE(spec.degeneracy == 2);
  FilterParams window{-2.0 * spec.radius, -0.25, 8.0, FilterMode::rectangular};
  const JumpOperator k = jump_spectral(eig, site_operator(2, 0, pauli_z()), window);
  for (const StateVec& v : spec.ground_states) CHECK((k.k * v).norm() <= 1e-10);
}

TEST_CASE("an all-pass filter reproduces the coupling operator") {
  Setup s = make_setup(2);
  const FilterParams all_pass{-1e12, 1e12, 1.0, FilterMode::rectangular};
  const JumpOperator k = jump_spectral(s.eig, s.coupling, all_pass);
  CHECK(spectral_norm(k.k - s.coupling) <= 1e-10);
}

TEST_CASE("jump_spectral matches a brute-force double loop") {
  Setup s = make_setup(2);
  const JumpOperator k = jump_spectral(s.eig, s.coupling, s.window);
  Operator brute = Operator::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const StateVec vi = s.eig.eigenvectors.col(i);
      const StateVec vj = s.eig.eigenvectors.col(j);
      const Complex amp = (vi.adjoint() * s.coupling * vj)(0);
      brute += filter_freq(s.eig.eigenvalues(i) - s.eig.eigenvalues(j), s.window) * amp *
               (vi * vj.adjoint());
    }
  CHECK(spectral_norm(k.k - brute) <= 1e-12);
}

TEST_CASE("jump_oft single-sample grid is a scaled coupling") {
  Setup s = make_setup(2);
  const TimeGrid g{0, 0.37};
  const FilterSamples samples = sample_filter(s.window, g);
  const JumpOperator k = jump_oft(s.eig, s.coupling, samples);
  const Complex f0 = samples.f[0];
  CHECK(spectral_norm(k.k - samples.delta_s * f0 * s.coupling) <= 1e-12);
}

TEST_CASE("jump_oft equals jump_spectral evaluated with the DFT filter") {
  Setup s = make_setup(2);
  const JumpOperator oft = jump_oft(s.eig, s.coupling, s.samples);
  Operator dft_jump = s.eig.eigenvectors.adjoint() * s.coupling * s.eig.eigenvectors;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      dft_jump(i, j) *=
          dft_filter(s.samples, s.eig.eigenvalues(i) - s.eig.eigenvalues(j));
  dft_jump = s.eig.eigenvectors * dft_jump * s.eig.eigenvectors.adjoint();
  CHECK(spectral_norm(oft.k - dft_jump) <= 1e-10);
}

TEST_CASE("jump_oft discretization error obeys the appendix bounds") {
  Setup s = make_setup(2);
  const JumpOperator oft = jump_oft(s.eig, s.coupling, s.samples);
  const JumpOperator exact = jump_spectral(s.eig, s.coupling, s.window);
  const double norm_a = spectral_norm(s.coupling);
  const double bound = aliasing_bound(s.window, s.grid, s.spec.radius, norm_a, 2) +
                       leakage_bound(s.window, s.grid) * norm_a;
  CHECK(spectral_norm(oft.k - exact.k) <= bound);
}

TEST_CASE("leakage tail against a quasi-infinite grid") {
  Setup s = make_setup(2);
  const TimeGrid wide{64, s.grid.delta_s};
  const FilterSamples tail_samples = sample_filter(s.window, wide);
  Operator tail = Operator::Zero(4, 4);
  for (std::size_t i = 0; i < tail_samples.size(); ++i) {
    const int l = static_cast<int>(i) - wide.m_s;
    if (std::abs(l) <= s.grid.m_s) continue;
    const Operator u = expm_hermitian(s.eig, tail_samples.s[i], +1);
    tail += tail_samples.delta_s * tail_samples.f[i] * (u * s.coupling * u.adjoint());
  }
  CHECK(spectral_norm(tail) <=
        leakage_bound(s.window, s.grid) * spectral_norm(s.coupling));
}

TEST_CASE("kraus pair of a vanishing jump is the identity channel") {
  const JumpOperator zero{Operator::Zero(4, 4), JumpConstruction::spectral, 0};
  const KrausPair kp = kraus_from_jump(zero, 2.5);
  CHECK(spectral_norm(kp.m0 - Operator::Identity(4, 4)) <= 1e-12);
  CHECK(spectral_norm(kp.m1) <= 1e-12);
  const DensityMatrix rho = oracle::random_density(4, 9);
  const DensityMatrix out = apply_channel(rho, kp);
  CHECK(spectral_norm(out.rho - rho.rho) <= 1e-10);
}

TEST_CASE("kraus completeness for random jumps") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::Index d = 1 << (1 + static_cast<int>(seed % 3));
    const JumpOperator k{oracle::random_operator(d, seed), JumpConstruction::spectral, 0};
    for (double tau : {0.01, 1.0, 4.0}) {
      const KrausPair kp = kraus_from_jump(k, tau);
      CHECK(spectral_norm(kp.m0.adjoint() * kp.m0 + kp.m1.adjoint() * kp.m1 -
                          Operator::Identity(d, d)) <= 1e-10);
    }
  }
}

TEST_CASE("closed-form Kraus pair of the qubit lowering operator") {
  Operator lower = Operator::Zero(2, 2);
  lower(0, 1) = 1.0;  // |0><1|
  const double tau = M_PI * M_PI / 4.0;  // sqrt(tau) = pi/2
  const KrausPair kp = kraus_from_jump({lower, JumpConstruction::spectral, 0}, tau);
  Operator m0_expected = Operator::Zero(2, 2);
  m0_expected(0, 0) = 1.0;  // diag(1, cos(pi/2))
  Operator m1_expected = Operator::Zero(2, 2);
  m1_expected(0, 1) = Complex(0.0, -1.0);
  CHECK(spectral_norm(kp.m0 - m0_expected) <= 1e-12);
  CHECK(spectral_norm(kp.m1 - m1_expected) <= 1e-12);
  // full population transfer
  StateVec one(2);
  one << 0.0, 1.0;
  const DensityMatrix out = apply_channel(DensityMatrix::pure(one), kp);
  CHECK(out.rho(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("channel preserves trace, hermiticity and positivity") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::Index d = 1 << (1 + static_cast<int>(seed % 3));
    const JumpOperator k{oracle::random_operator(d, 100 + seed),
                         JumpConstruction::spectral, 0};
    const KrausPair kp = kraus_from_jump(k, 1.3);
    const DensityMatrix out = apply_channel(oracle::random_density(d, 200 + seed), kp);
    CHECK(std::abs(out.rho.trace().real() - 1.0) <= 1e-10);
    CHECK(spectral_norm(out.rho - out.rho.adjoint()) <= 1e-10);
    CHECK(eigh(out.rho).eigenvalues(0) >= -1e-8);
  }
}

TEST_CASE("rectangular-spectral channel fixes the ground state") {
  Setup s = make_setup(3, FilterMode::rectangular);
  const JumpOperator k = jump_spectral(s.eig, s.coupling, s.window);
  const KrausPair kp = kraus_from_jump(k, 4.0);
  const DensityMatrix ground = DensityMatrix::pure(s.spec.ground_states[0]);
  const DensityMatrix after = apply_channel(ground, kp);
  CHECK(spectral_norm(after.rho - ground.rho) <= 1e-10);
}

TEST_CASE("dilated unitary blocks reproduce the Kraus operators") {
  const Eigen::Index d = 8;
  const JumpOperator k{oracle::random_operator(d, 77), JumpConstruction::spectral, 0};
  const double tau = 2.2;
  const Operator w = dilated_unitary_exact(k, tau);
  CHECK(spectral_norm(w.adjoint() * w - Operator::Identity(2 * d, 2 * d)) <= 1e-10);

  const KrausPair kp = kraus_from_jump(k, tau);
  CHECK(spectral_norm(w.topLeftCorner(d, d) - kp.m0) <= 1e-10);
  CHECK(spectral_norm(w.bottomLeftCorner(d, d) - kp.m1) <= 1e-10);
  CHECK(spectral_norm(w.topRightCorner(d, d) + kp.m1.adjoint()) <= 1e-10);
  const Operator cos_kkdag = matfun_psd(tau * (k.k * k.k.adjoint()), MatFun::cos_sqrt);
  CHECK(spectral_norm(w.bottomRightCorner(d, d) - cos_kkdag) <= 1e-10);

  CHECK(spectral_norm(dilated_unitary_exact(k, 0.0) -
                      Operator::Identity(2 * d, 2 * d)) <= 1e-12);
}

TEST_CASE("dilated jump annihilates the ancilla-ground product state") {
  Setup s = make_setup(2, FilterMode::rectangular);
  const JumpOperator k = jump_spectral(s.eig, s.coupling, s.window);
  Operator cal_k = Operator::Zero(8, 8);
  cal_k.topRightCorner(4, 4) = k.k.adjoint();
  cal_k.bottomLeftCorner(4, 4) = k.k;
  Operator product = Operator::Zero(8, 8);
  product.topLeftCorner(4, 4) =
      s.spec.ground_states[0] * s.spec.ground_states[0].adjoint();
  CHECK(spectral_norm(cal_k * product * cal_k.adjoint()) <= 1e-10);
}

TEST_CASE("channel equals the ancilla-traced dilation") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Eigen::Index d = 8;
    const JumpOperator k{oracle::random_operator(d, 300 + seed),
                         JumpConstruction::spectral, 0};
    const double tau = 0.3 + 1.1 * seed;
    const DensityMatrix rho = oracle::random_density(d, 400 + seed);
    const DensityMatrix via_kraus = apply_channel(rho, kraus_from_jump(k, tau));
    const DensityMatrix via_dilation = apply_dilated(rho, dilated_unitary_exact(k, tau));
    CHECK(spectral_norm(via_kraus.rho - via_dilation.rho) <= 1e-10);
  }
}

TEST_CASE("discrete dilated unitary approaches the exact one as tau shrinks") {
  Setup s = make_setup(2);
  const JumpOperator k = jump_oft(s.eig, s.coupling, s.samples);
  double prev = 1e300;
  for (double tau : {0.1, 0.01, 0.001}) {
    const Operator wd =
        dilated_unitary_discrete(s.samples, s.eig, s.coupling, tau, true);
    CHECK(spectral_norm(wd.adjoint() * wd - Operator::Identity(8, 8)) <= 1e-10);
    const double err = spectral_norm(wd - dilated_unitary_exact(k, tau));
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 2e-4);
}

TEST_CASE("apply_coherent conserves spectrum, purity and energy") {
  Setup s = make_setup(3);
  const DensityMatrix rho = oracle::random_density(8, 5);
  CHECK(spectral_norm(apply_coherent(rho, s.h, 0.0).rho - rho.rho) <= 1e-12);

  const DensityMatrix evolved = apply_coherent(rho, s.h, 0.77);
  CHECK(std::abs(energy_expectation(evolved, s.h) - energy_expectation(rho, s.h)) <= 1e-10);
  CHECK(std::abs(purity(evolved) - purity(rho)) <= 1e-10);
  const RealVec before = eigh(rho.rho).eigenvalues;
  const RealVec after = eigh(evolved.rho).eigenvalues;
  CHECK((before - after).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("dissipative_step fixes the ground state and reduces to coherent flow") {
  Setup s = make_setup(2, FilterMode::rectangular);
  const JumpOperator k = jump_spectral(s.eig, s.coupling, s.window);
  const KrausPair kp = kraus_from_jump(k, 4.0);
  const DensityMatrix ground = DensityMatrix::pure(s.spec.ground_states[0]);
  const DensityMatrix stepped = dissipative_step(ground, s.h, kp, 0.5);
  CHECK(spectral_norm(stepped.rho - ground.rho) <= 1e-10);

  const JumpOperator zero{Operator::Zero(4, 4), JumpConstruction::spectral, 0};
  const KrausPair kp0 = kraus_from_jump(zero, 4.0);
  const DensityMatrix rho = oracle::random_density(4, 31);
  const DensityMatrix via_step = dissipative_step(rho, s.h, kp0, 0.4);
  const DensityMatrix via_coherent = apply_coherent(rho, s.h, 0.8);
  CHECK(spectral_norm(via_step.rho - via_coherent.rho) <= 1e-10);
}

TEST_CASE("golden 20-step trace of the textbook channel, N=6 protocol parameters") {
  Setup s = make_setup(6);
  const JumpOperator k = jump_oft(s.eig, s.coupling, s.samples);
  const KrausPair kp = kraus_from_jump(k, 4.0);
  DensityMatrix rho = DensityMatrix::y_plus_product(6);
  std::vector<double> energies{energy_expectation(rho, s.h)};
  for (int m = 1; m <= 20; ++m) {
    rho = dissipative_step(rho, s.h, kp, 0.5);
    energies.push_back(energy_expectation(rho, s.h));
  }
  CHECK(std::abs(energies[0]) <= 1e-10);
  for (int m = 0; m < 20; ++m) CHECK(energies[m + 1] < energies[m]);
  // frozen from the independent dense simulation oracle
  CHECK(energies[5] == doctest::Approx(-3.5892034552701766).epsilon(1e-9));
  CHECK(energies[10] == doctest::Approx(-5.535473334353819).epsilon(1e-9));
  CHECK(energies[20] == doctest::Approx(-6.726713495244546).epsilon(1e-9));
}

TEST_CASE("fidelity against pure states") {
  Setup s = make_setup(3);
  const DensityMatrix ground = DensityMatrix::pure(s.spec.ground_states[0]);
  CHECK(fidelity_pure(ground, s.spec.ground_states[0]) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity_pure(DensityMatrix::maximally_mixed(8), s.spec.ground_states[0]) ==
        doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-12));
}

TEST_CASE("fidelity grows monotonically under the rectangular-spectral channel") {
  Setup s = make_setup(3, FilterMode::rectangular);
  const JumpOperator k = jump_spectral(s.eig, s.coupling, s.window);
  const KrausPair kp = kraus_from_jump(k, 4.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DensityMatrix rho = oracle::random_density(8, 900 + seed);
    double prev = fidelity_pure(rho, s.spec.ground_states[0]);
    for (int m = 0; m < 15; ++m) {
      rho = dissipative_step(rho, s.h, kp, 0.5);
      const double cur = fidelity_pure(rho, s.spec.ground_states[0]);
      CHECK(cur >= prev - 1e-9);
      prev = cur;
    }
  }
}

TEST_CASE("ancilla outcome probabilities") {
  Setup s = make_setup(2, FilterMode::rectangular);
  const JumpOperator k = jump_spectral(s.eig, s.coupling, s.window);
  const KrausPair kp = kraus_from_jump(k, 4.0);
  const DensityMatrix ground = DensityMatrix::pure(s.spec.ground_states[0]);
  const auto [pg0, pg1] = ancilla_probs(ground, kp);
  CHECK(pg0 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(pg1 == doctest::Approx(0.0).epsilon(1e-10));

  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = oracle::random_density(4, 40 + seed);
    const auto [p0, p1] = ancilla_probs(rho, kp);
    CHECK(p0 + p1 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(p0 >= -1e-10);
    CHECK(p1 >= -1e-10);
  }
}

TEST_CASE("small-tau ancilla probabilities follow the linear law") {
  Setup s = make_setup(2);
  const JumpOperator k = jump_oft(s.eig, s.coupling, s.samples);
  const DensityMatrix rho = oracle::random_density(4, 123);
  const double rate = (k.k * rho.rho * k.k.adjoint()).trace().real();
  for (double tau : {1e-4, 1e-3, 1e-2}) {
    const auto [p0, p1] = ancilla_probs(rho, kraus_from_jump(k, tau));
    (void)p0;
    CHECK(p1 / tau == doctest::Approx(rate).epsilon(0.02));
  }
}

TEST_CASE("lindblad defect vanishes for trivial cases and scales as tau^2") {
  Setup s = make_setup(2, FilterMode::rectangular);
  const JumpOperator zero{Operator::Zero(4, 4), JumpConstruction::spectral, 0};
  const DensityMatrix rho = oracle::random_density(4, 3);
  CHECK(lindblad_defect(rho, zero, 0.5) <= 1e-12);

  const JumpOperator k_rect = jump_spectral(s.eig, s.coupling, s.window);
  const DensityMatrix ground = DensityMatrix::pure(s.spec.ground_states[0]);
  CHECK(lindblad_defect(ground, k_rect, 1.0) <= 1e-10);

  const JumpOperator k{oracle::random_operator(8, 17), JumpConstruction::spectral, 0};
  const DensityMatrix rho8 = oracle::random_density(8, 18);
  const double d1 = lindblad_defect(rho8, k, 1e-4);
  const double d2 = lindblad_defect(rho8, k, 1e-2);
  const double slope = std::log(d2 / d1) / std::log(100.0);
  CHECK(slope >= 1.8);
  CHECK(slope <= 2.2);
}
