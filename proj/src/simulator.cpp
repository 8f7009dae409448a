#include "qdiss/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "qdiss/errors.hpp"
#include "qdiss/rng.hpp"

namespace qdiss {

namespace {

using Mat2 = Eigen::Matrix2cd;

Mat2 mat_rx(double t) {
  Mat2 m;
  const double h = 0.5 * t;
  m << Complex(std::cos(h), 0), Complex(0, -std::sin(h)),
       Complex(0, -std::sin(h)), Complex(std::cos(h), 0);
  return m;
}
Mat2 mat_ry(double t) {
  Mat2 m;
  const double h = 0.5 * t;
  m << Complex(std::cos(h), 0), Complex(-std::sin(h), 0),
       Complex(std::sin(h), 0), Complex(std::cos(h), 0);
  return m;
}
Mat2 mat_rz(double t) {
  Mat2 m;
  m << std::exp(Complex(0, -0.5 * t)), Complex(0, 0), Complex(0, 0),
      std::exp(Complex(0, 0.5 * t));
  return m;
}
Mat2 mat_h() {
  Mat2 m;
  const double r = 1.0 / std::sqrt(2.0);
  m << r, r, r, -r;
  return m;
}
Mat2 mat_s() {
  Mat2 m;
  m << 1, 0, 0, Complex(0, 1);
  return m;
}
Mat2 mat_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}
Mat2 mat_y() {
  Mat2 m;
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}
Mat2 mat_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

Mat2 gate_matrix(const Gate& g) {
  switch (g.kind) {
    case GateKind::RX: return mat_rx(g.angle);
    case GateKind::RY: return mat_ry(g.angle);
    case GateKind::RZ: return mat_rz(g.angle);
    case GateKind::H: return mat_h();
    case GateKind::S: return mat_s();
    case GateKind::X: return mat_x();
    default: throw NonUnitaryElementError("gate_matrix: not a 1q unitary");
  }
}

// ---------------------------------------------------------------------------
// statevector kernels

// Cache block for batched low-bit gate application (2^16 amplitudes = 1 MiB).
constexpr int kBlockBits = 16;

void apply_1q_span(Complex* a, std::size_t len, int bitpos, const Mat2& m) {
  const std::size_t stride = std::size_t(1) << bitpos;
  const Complex m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::size_t base = 0; base < len; base += 2 * stride)
    for (std::size_t i = base; i < base + stride; ++i) {
      const Complex x = a[i];
      const Complex y = a[i + stride];
      a[i] = m00 * x + m01 * y;
      a[i + stride] = m10 * x + m11 * y;
    }
}

struct OneQGate {
  int bitpos;
  Mat2 m;
};

// Distinct-qubit single-qubit gates batched into one memory sweep: low-bit
// gates are applied block-by-block while the block is cache resident.
void apply_1q_run(std::vector<Complex>& amps, const std::vector<OneQGate>& run) {
  const std::size_t n = amps.size();
  const std::size_t block = std::min<std::size_t>(n, std::size_t(1) << kBlockBits);
  for (const OneQGate& g : run)
    if ((std::size_t(1) << g.bitpos) >= block) apply_1q_span(amps.data(), n, g.bitpos, g.m);
  bool any_low = false;
  for (const OneQGate& g : run) any_low |= (std::size_t(1) << g.bitpos) < block;
  if (!any_low) return;
  for (std::size_t start = 0; start < n; start += block)
    for (const OneQGate& g : run)
      if ((std::size_t(1) << g.bitpos) < block)
        apply_1q_span(amps.data() + start, block, g.bitpos, g.m);
}

// Diagonal gate as a parity rule: parity of popcount(index & mask) selects
// the phase angle.
struct DiagTerm {
  std::uint64_t mask;
  double even;
  double odd;
};

void apply_diag_run(std::vector<Complex>& amps, const std::vector<DiagTerm>& terms) {
  const std::size_t n = amps.size();
  for (std::size_t b = 0; b < n; ++b) {
    double angle = 0.0;
    for (const DiagTerm& t : terms)
      angle += (__builtin_parityll(b & t.mask) != 0) ? t.odd : t.even;
    if (angle != 0.0) amps[b] *= Complex(std::cos(angle), std::sin(angle));
  }
}

double prob_zero(const std::vector<Complex>& amps, int bitpos) {
  const std::size_t stride = std::size_t(1) << bitpos;
  double p = 0.0;
  for (std::size_t base = 0; base < amps.size(); base += 2 * stride)
    for (std::size_t i = base; i < base + stride; ++i) p += std::norm(amps[i]);
  return p;
}

void collapse(std::vector<Complex>& amps, int bitpos, int outcome, double prob) {
  const std::size_t stride = std::size_t(1) << bitpos;
  const double scale = 1.0 / std::sqrt(std::max(prob, 1e-300));
  for (std::size_t base = 0; base < amps.size(); base += 2 * stride)
    for (std::size_t i = base; i < base + stride; ++i) {
      Complex& keep = (outcome == 0) ? amps[i] : amps[i + stride];
      Complex& kill = (outcome == 0) ? amps[i + stride] : amps[i];
      keep *= scale;
      kill = Complex(0, 0);
    }
}

// Batches consecutive commuting gates and flushes around measurements and
// stochastic noise insertions.
class ShotEngine {
 public:
  ShotEngine(int n_qubits, std::uint64_t seed) : n_(n_qubits), rng_{seed} {
    amps_.assign(std::size_t(1) << n_, Complex(0, 0));
  }

  std::vector<std::uint8_t> run(const Circuit& c, const std::optional<NoiseModel>& noise) {
    const double p_spam = noise ? noise->p_spam : 0.0;
    const double p2q = noise ? noise->p2q : 0.0;

    std::uint64_t initial = 0;
    if (p_spam > 0.0)
      for (int q = 0; q < n_; ++q)
        if (rng_.uniform() < p_spam) initial |= std::uint64_t(1) << bitpos(q);
    amps_[initial] = Complex(1, 0);

    std::vector<std::uint8_t> bits(c.n_clbits, 0);
    for (const Gate& g : c.gates) {
      switch (g.kind) {
        case GateKind::RZ:
        case GateKind::S:
          push_diag(g);
          break;
        case GateKind::RZZ: {
          push_diag(g);
          if (p2q > 0.0 && rng_.uniform() < p2q) {
            flush();
            insert_pauli(g.q0, g.q1);
          }
          break;
        }
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::H:
        case GateKind::X:
          push_1q(g);
          break;
        case GateKind::Measure: {
          flush();
          const int outcome = measure(g.q0);
          int recorded = outcome;
          if (p_spam > 0.0 && rng_.uniform() < p_spam) recorded ^= 1;
          if (g.clbit >= 0 && g.clbit < static_cast<int>(bits.size()))
            bits[g.clbit] = static_cast<std::uint8_t>(recorded);
          break;
        }
        case GateKind::XCond:
          flush();
          if (g.clbit >= 0 && g.clbit < static_cast<int>(bits.size()) && bits[g.clbit])
            apply_1q_span(amps_.data(), amps_.size(), bitpos(g.q0), mat_x());
          break;
        case GateKind::Reset: {
          flush();
          const int outcome = measure(g.q0);
          if (outcome == 1)
            apply_1q_span(amps_.data(), amps_.size(), bitpos(g.q0), mat_x());
          if (p_spam > 0.0 && rng_.uniform() < p_spam)
            apply_1q_span(amps_.data(), amps_.size(), bitpos(g.q0), mat_x());
          break;
        }
      }
    }
    flush();
    return bits;
  }

 private:
  int bitpos(int qubit) const { return n_ - 1 - qubit; }

  void push_diag(const Gate& g) {
    flush_1q();
    DiagTerm t{};
    if (g.kind == GateKind::RZZ) {
      t.mask = (std::uint64_t(1) << bitpos(g.q0)) | (std::uint64_t(1) << bitpos(g.q1));
      t.even = -0.5 * g.angle;
      t.odd = +0.5 * g.angle;
    } else if (g.kind == GateKind::RZ) {
      t.mask = std::uint64_t(1) << bitpos(g.q0);
      t.even = -0.5 * g.angle;
      t.odd = +0.5 * g.angle;
    } else {  // S
      t.mask = std::uint64_t(1) << bitpos(g.q0);
      t.even = 0.0;
      t.odd = 0.5 * M_PI;
    }
    // same-mask terms fold into one parity rule
    for (DiagTerm& have : diag_)
      if (have.mask == t.mask) {
        have.even += t.even;
        have.odd += t.odd;
        return;
      }
    diag_.push_back(t);
  }

  void push_1q(const Gate& g) {
    flush_diag();
    const int p = bitpos(g.q0);
    const Mat2 m = gate_matrix(g);
    for (OneQGate& have : oneq_)
      if (have.bitpos == p) {
        have.m = m * have.m;
        return;
      }
    oneq_.push_back({p, m});
  }

  void insert_pauli(int q0, int q1) {
    // one of the 15 non-identity two-qubit Paulis, uniformly
    const int pick = rng_.below(15) + 1;
    const int first = pick / 4;
    const int second = pick % 4;
    static const Mat2 paulis[4] = {Mat2::Identity(), mat_x(), mat_y(), mat_z()};
    if (first != 0) apply_1q_span(amps_.data(), amps_.size(), bitpos(q0), paulis[first]);
    if (second != 0) apply_1q_span(amps_.data(), amps_.size(), bitpos(q1), paulis[second]);
  }

  int measure(int qubit) {
    const double p0 = prob_zero(amps_, bitpos(qubit));
    const int outcome = (rng_.uniform() < p0) ? 0 : 1;
    collapse(amps_, bitpos(qubit), outcome, outcome == 0 ? p0 : 1.0 - p0);
    return outcome;
  }

  void flush_diag() {
    if (!diag_.empty()) {
      apply_diag_run(amps_, diag_);
      diag_.clear();
    }
  }
  void flush_1q() {
    if (!oneq_.empty()) {
      apply_1q_run(amps_, oneq_);
      oneq_.clear();
    }
  }
  void flush() {
    flush_diag();
    flush_1q();
  }

  int n_;
  SplitMix rng_;
  std::vector<Complex> amps_;
  std::vector<DiagTerm> diag_;
  std::vector<OneQGate> oneq_;
};

}  // namespace

PureState::PureState(int n) : n_qubits(n) {
  amplitudes.assign(std::size_t(1) << n, Complex(0, 0));
  amplitudes[0] = Complex(1, 0);
}

double PureState::norm() const {
  double s = 0.0;
  for (const Complex& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

std::vector<std::uint8_t> run_shot(const Circuit& c,
                                   const std::optional<NoiseModel>& noise,
                                   std::uint64_t seed) {
  if (c.n_qubits > kMaxTrajectoryQubits)
    throw DimTooLargeError("run_shot: trajectory engine capped at 24 qubits");
  if (noise) validate(*noise);
  ShotEngine engine(c.n_qubits, seed);
  return engine.run(c, noise);
}

// ---------------------------------------------------------------------------
// density backend

namespace {

void density_apply_1q(Operator& rho, int n, int qubit, const Mat2& m) {
  const int p = n - 1 - qubit;
  const Eigen::Index d = rho.rows();
  const Eigen::Index stride = Eigen::Index(1) << p;
  // rows: rho <- U rho
  for (Eigen::Index base = 0; base < d; base += 2 * stride)
    for (Eigen::Index i = base; i < base + stride; ++i) {
      const Eigen::RowVectorXcd top = rho.row(i);
      const Eigen::RowVectorXcd bot = rho.row(i + stride);
      rho.row(i) = m(0, 0) * top + m(0, 1) * bot;
      rho.row(i + stride) = m(1, 0) * top + m(1, 1) * bot;
    }
  // columns: rho <- rho U'
  const Mat2 md = m.adjoint();
  for (Eigen::Index base = 0; base < d; base += 2 * stride)
    for (Eigen::Index j = base; j < base + stride; ++j) {
      const Eigen::VectorXcd left = rho.col(j);
      const Eigen::VectorXcd right = rho.col(j + stride);
      rho.col(j) = left * md(0, 0) + right * md(1, 0);
      rho.col(j + stride) = left * md(0, 1) + right * md(1, 1);
    }
}

void density_apply_rzz(Operator& rho, int n, int q0, int q1, double angle) {
  const Eigen::Index d = rho.rows();
  const int p0 = n - 1 - q0;
  const int p1 = n - 1 - q1;
  Eigen::VectorXcd phase(d);
  for (Eigen::Index b = 0; b < d; ++b) {
    const bool odd = (((b >> p0) ^ (b >> p1)) & 1) != 0;
    phase(b) = std::exp(Complex(0, odd ? 0.5 * angle : -0.5 * angle));
  }
  rho = phase.asDiagonal() * rho * phase.conjugate().asDiagonal();
}

void density_depolarize_2q(Operator& rho, int n, int q0, int q1, double p) {
  if (p <= 0.0) return;
  Operator mixed = Operator::Zero(rho.rows(), rho.cols());
  static const auto paulis = [] {
    std::array<Mat2, 4> ps = {Mat2::Identity(), mat_x(), mat_y(), mat_z()};
    return ps;
  }();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (a == 0 && b == 0) continue;
      Operator term = rho;
      if (a != 0) density_apply_1q(term, n, q0, paulis[a]);
      if (b != 0) density_apply_1q(term, n, q1, paulis[b]);
      mixed += term;
    }
  rho = (1.0 - p) * rho + (p / 15.0) * mixed;
}

void density_bitflip(Operator& rho, int n, int qubit, double p) {
  if (p <= 0.0) return;
  Operator flipped = rho;
  density_apply_1q(flipped, n, qubit, mat_x());
  rho = (1.0 - p) * rho + p * flipped;
}

// P_b rho P_b for one qubit
Operator project(const Operator& rho, int n, int qubit, int outcome) {
  const int p = n - 1 - qubit;
  const Eigen::Index d = rho.rows();
  Operator out = Operator::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (static_cast<int>((i >> p) & 1) != outcome) continue;
    for (Eigen::Index j = 0; j < d; ++j)
      if (static_cast<int>((j >> p) & 1) == outcome) out(i, j) = rho(i, j);
  }
  return out;
}

struct DensityBranch {
  Operator rho;                       // unnormalized; trace = branch weight
  std::map<int, int> pending;        // clbit -> recorded value
};

}  // namespace

DensityMatrix density_run(const Circuit& c, const std::optional<NoiseModel>& noise,
                          std::vector<double>* measure_p0) {
  if (c.n_qubits > kMaxDensityQubits)
    throw DimTooLargeError("density_run: capped at 10 qubits");
  if (noise) validate(*noise);
  const int n = c.n_qubits;
  const Eigen::Index d = Eigen::Index(1) << n;
  const double p_spam = noise ? noise->p_spam : 0.0;
  const double p2q = noise ? noise->p2q : 0.0;

  // remaining XCond reads per clbit decide when measurement branches merge
  std::vector<int> reads(c.n_clbits, 0);
  for (const Gate& g : c.gates)
    if (g.kind == GateKind::XCond && g.clbit >= 0) ++reads[g.clbit];

  std::vector<DensityBranch> branches;
  {
    Operator rho0 = Operator::Zero(d, d);
    rho0(0, 0) = Complex(1, 0);
    for (int q = 0; q < n; ++q) density_bitflip(rho0, n, q, p_spam);
    branches.push_back({std::move(rho0), {}});
  }

  auto merge_if_free = [&]() {
    // drop pending keys with no future readers, then coalesce identical maps
    for (DensityBranch& b : branches)
      for (auto it = b.pending.begin(); it != b.pending.end();)
        it = (reads[it->first] == 0) ? b.pending.erase(it) : std::next(it);
    std::vector<DensityBranch> merged;
    for (DensityBranch& b : branches) {
      bool found = false;
      for (DensityBranch& m : merged)
        if (m.pending == b.pending) {
          m.rho += b.rho;
          found = true;
          break;
        }
      if (!found) merged.push_back(std::move(b));
    }
    branches = std::move(merged);
  };

  for (const Gate& g : c.gates) {
    switch (g.kind) {
      case GateKind::RX:
      case GateKind::RY:
      case GateKind::RZ:
      case GateKind::H:
      case GateKind::S:
      case GateKind::X:
        for (DensityBranch& b : branches)
          density_apply_1q(b.rho, n, g.q0, gate_matrix(g));
        break;
      case GateKind::RZZ:
        for (DensityBranch& b : branches) {
          density_apply_rzz(b.rho, n, g.q0, g.q1, g.angle);
          density_depolarize_2q(b.rho, n, g.q0, g.q1, p2q);
        }
        break;
      case GateKind::Measure: {
        const bool branching = g.clbit >= 0 && g.clbit < c.n_clbits && reads[g.clbit] > 0;
        double record_zero = 0.0;
        double total = 0.0;
        std::vector<DensityBranch> next;
        for (DensityBranch& b : branches) {
          Operator p0rho = project(b.rho, n, g.q0, 0);
          Operator p1rho = project(b.rho, n, g.q0, 1);
          const double w0 = p0rho.trace().real();
          const double w1 = p1rho.trace().real();
          total += w0 + w1;
          record_zero += (1.0 - p_spam) * w0 + p_spam * w1;
          if (branching) {
            // branch on the recorded value; readout flips mix the projections
            DensityBranch r0{(1.0 - p_spam) * p0rho + p_spam * p1rho, b.pending};
            DensityBranch r1{(1.0 - p_spam) * p1rho + p_spam * p0rho, b.pending};
            r0.pending[g.clbit] = 0;
            r1.pending[g.clbit] = 1;
            next.push_back(std::move(r0));
            next.push_back(std::move(r1));
          } else {
            next.push_back({p0rho + p1rho, b.pending});
          }
        }
        branches = std::move(next);
        if (measure_p0) measure_p0->push_back(total > 0 ? record_zero / total : 1.0);
        break;
      }
      case GateKind::XCond: {
        for (DensityBranch& b : branches) {
          auto it = b.pending.find(g.clbit);
          const int bit = (it != b.pending.end()) ? it->second : 0;
          if (bit) density_apply_1q(b.rho, n, g.q0, mat_x());
        }
        if (g.clbit >= 0 && g.clbit < c.n_clbits) --reads[g.clbit];
        merge_if_free();
        break;
      }
      case GateKind::Reset: {
        for (DensityBranch& b : branches) {
          Operator p0rho = project(b.rho, n, g.q0, 0);
          Operator p1rho = project(b.rho, n, g.q0, 1);
          density_apply_1q(p1rho, n, g.q0, mat_x());
          b.rho = p0rho + p1rho;
          density_bitflip(b.rho, n, g.q0, p_spam);
        }
        break;
      }
    }
  }

  Operator rho = Operator::Zero(d, d);
  for (DensityBranch& b : branches) rho += b.rho;
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw NumericalFailureError("density_run: vanished trace");
  return {rho / tr};
}

// ---------------------------------------------------------------------------
// shot-based energy estimation

namespace {

struct BasisStats {
  double mean = 0.0;
  double var_of_mean = 0.0;
};

// per-shot totals of the commuting term group measured in one basis
BasisStats basis_statistics(const std::vector<double>& totals) {
  const std::size_t n = totals.size();
  double mean = 0.0;
  for (double t : totals) mean += t;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double t : totals) ss += (t - mean) * (t - mean);
  const double sample_var = (n > 1) ? ss / static_cast<double>(n - 1) : 0.0;
  return {mean, sample_var / static_cast<double>(n)};
}

}  // namespace

Estimate estimate_energy(const ExperimentConfig& cfg, int m, long shots_per_basis,
                         const std::optional<NoiseModel>& noise, int fold_factor,
                         std::uint64_t master_seed) {
  if (shots_per_basis < 2)
    throw ConfigError("estimate_energy: need at least 2 shots per basis");
  const ExperimentConfig rc = resolve_config(cfg);
  const int n = rc.ising.n_sites;

  std::vector<double> totals[2];
  for (int basis_id = 0; basis_id < 2; ++basis_id) {
    const MeasureBasis basis = basis_id == 0 ? MeasureBasis::zz : MeasureBasis::x;
    Circuit circuit = build_experiment(m, rc, basis);
    if (fold_factor != 1) circuit = fold_gates(circuit, fold_factor);

    const std::uint64_t basis_stream = mix_seed(
        master_seed, 0xB1A5ULL * (basis_id + 1) + 0x9E37ULL * static_cast<std::uint64_t>(m) +
                         0x517CC1B7ULL * static_cast<std::uint64_t>(fold_factor));

    std::vector<double>& out = totals[basis_id];
    out.assign(shots_per_basis, 0.0);
    auto run_range = [&](long begin, long end) {
      for (long shot = begin; shot < end; ++shot) {
        const std::vector<std::uint8_t> bits =
            run_shot(circuit, noise, mix_seed(basis_stream, static_cast<std::uint64_t>(shot)));
        double total = 0.0;
        if (basis == MeasureBasis::zz) {
          for (int i = 0; i + 1 < n; ++i) {
            const int zi = 1 - 2 * bits[m + i];
            const int zj = 1 - 2 * bits[m + i + 1];
            total += zi * zj;
          }
        } else {
          for (int i = 0; i < n; ++i) total += 1 - 2 * bits[m + i];
        }
        out[shot] = total;
      }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const bool heavy = static_cast<long>(circuit.gates.size()) * shots_per_basis > 200000 &&
                       circuit.n_qubits >= 10;
    const long workers = heavy ? std::min<long>(hw, shots_per_basis) : 1;
    if (workers <= 1) {
      run_range(0, shots_per_basis);
    } else {
      std::vector<std::thread> pool;
      std::atomic<long> cursor{0};
      const long chunk = 8;
      for (long w = 0; w < workers; ++w)
        pool.emplace_back([&] {
          for (;;) {
            const long begin = cursor.fetch_add(chunk);
            if (begin >= shots_per_basis) return;
            run_range(begin, std::min(begin + chunk, shots_per_basis));
          }
        });
      for (std::thread& t : pool) t.join();
    }
  }

  const BasisStats zz = basis_statistics(totals[0]);
  const BasisStats x = basis_statistics(totals[1]);
  Estimate e;
  e.mean = rc.ising.exchange * zz.mean + rc.ising.transverse * x.mean;
  e.stderr_ = std::sqrt(rc.ising.exchange * rc.ising.exchange * zz.var_of_mean +
                        rc.ising.transverse * rc.ising.transverse * x.var_of_mean);
  e.shots = 2 * shots_per_basis;
  return e;
}

}  // namespace qdiss
