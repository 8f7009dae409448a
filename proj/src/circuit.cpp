#include "qdiss/circuit.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "qdiss/errors.hpp"

namespace qdiss {

void Circuit::add(const Gate& g) {
  if (g.q0 < 0 || g.q0 >= n_qubits || (g.q1 >= 0 && g.q1 >= n_qubits))
    throw DimMismatchError("circuit: qubit index out of range");
  if (g.kind == GateKind::RZZ && g.q0 == g.q1)
    throw DimMismatchError("circuit: RZZ needs two distinct qubits");
  gates.push_back(g);
}

void Circuit::add(std::vector<Gate> more) {
  for (const Gate& g : more) add(g);
}

int Circuit::count(GateKind kind) const {
  int n = 0;
  for (const Gate& g : gates) n += (g.kind == kind);
  return n;
}

bool is_rotation(GateKind k) {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ ||
         k == GateKind::RZZ;
}

bool is_diagonal(GateKind k) {
  return k == GateKind::RZ || k == GateKind::S || k == GateKind::RZZ;
}

bool is_unitary_1q(GateKind k) {
  return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ ||
         k == GateKind::H || k == GateKind::S || k == GateKind::X;
}

int spam_event_count(const Circuit& c) {
  return c.n_qubits + c.count(GateKind::Measure) + c.count(GateKind::Reset);
}

std::vector<Gate> trotter_tfim_step(const IsingParams& p, double dt, int sign,
                                    int offset) {
  std::vector<Gate> out;
  const double rx_angle = -sign * p.transverse * dt;
  const double rzz_angle = -sign * 2.0 * p.exchange * dt;
  // half-angle field layers flank the bond layer
  auto rx_half_layer = [&] {
    if (rx_angle == 0.0) return;
    for (int i = 0; i < p.n_sites; ++i)
      out.push_back({GateKind::RX, offset + i, -1, 0.5 * rx_angle, -1});
  };
  rx_half_layer();
  if (rzz_angle != 0.0)
    for (int i = 0; i + 1 < p.n_sites; ++i)
      out.push_back({GateKind::RZZ, offset + i, offset + i + 1, rzz_angle, -1});
  rx_half_layer();
  return out;
}

std::vector<Gate> trotter_tfim_evolution(const IsingParams& p, double t, int sign,
                                         int steps, int offset) {
  if (steps < 1) throw ConfigError("trotter_tfim_evolution: steps must be >= 1");
  std::vector<Gate> out;
  const double dt = t / steps;
  for (int k = 0; k < steps; ++k) {
    std::vector<Gate> one = trotter_tfim_step(p, dt, sign, offset);
    out.insert(out.end(), one.begin(), one.end());
  }
  return out;
}

std::vector<Gate> dilated_w_gates(const FilterSamples& samples, const IsingParams& p,
                                  double tau, const WGateOptions& opt) {
  if (tau < 0.0) throw ConfigError("dilated_w_gates: tau must be nonnegative");
  if (opt.substeps < 1) throw ConfigError("dilated_w_gates: substeps must be >= 1");
  const int m_s = samples.m_s;
  const double sqrt_tau = std::sqrt(tau);
  std::vector<Gate> out;

  auto ancilla_rz = [&](double phi) {
    if (phi != 0.0) out.push_back({GateKind::RZ, 0, -1, phi, -1});
  };
  auto interaction = [&](int idx, bool doubled) {
    const double angle =
        sqrt_tau * samples.delta_s * samples.abs_f[idx] * (doubled ? 2.0 : 1.0);
    if (angle == 0.0) return;
    out.push_back({GateKind::H, 0, -1, 0.0, -1});
    out.push_back({GateKind::RZZ, 0, 1, angle, -1});
    out.push_back({GateKind::H, 0, -1, 0.0, -1});
  };
  auto evolution = [&](double t, int sign, int steps) {
    std::vector<Gate> ev = trotter_tfim_evolution(p, t, sign, steps, 1);
    out.insert(out.end(), ev.begin(), ev.end());
  };

  if (opt.keep_endpoints && m_s > 0)
    evolution(samples.s.back(), +1, m_s * opt.substeps);
  ancilla_rz(-samples.phase.front());
  for (int idx = 0; idx < 2 * m_s; ++idx) {
    interaction(idx, false);
    ancilla_rz(samples.phase[idx] - samples.phase[idx + 1]);
    evolution(samples.delta_s, -1, opt.substeps);
  }
  if (opt.merge_center) {
    interaction(2 * m_s, true);
  } else {
    interaction(2 * m_s, false);
    interaction(2 * m_s, false);
  }
  for (int idx = 2 * m_s - 1; idx >= 0; --idx) {
    evolution(samples.delta_s, +1, opt.substeps);
    ancilla_rz(samples.phase[idx + 1] - samples.phase[idx]);
    interaction(idx, false);
  }
  ancilla_rz(samples.phase.front());
  if (opt.keep_endpoints && m_s > 0)
    evolution(samples.s.back(), -1, m_s * opt.substeps);
  return out;
}

Circuit build_experiment(int m, const ExperimentConfig& cfg, MeasureBasis basis) {
  Circuit c = build_state_circuit(m, cfg);
  const int n = cfg.ising.n_sites;
  if (basis == MeasureBasis::x)
    for (int q = 1; q <= n; ++q) c.add({GateKind::H, q, -1, 0.0, -1});
  for (int q = 1; q <= n; ++q)
    c.add({GateKind::Measure, q, -1, 0.0, m + (q - 1)});
  return c;
}

Circuit build_state_circuit(int m, const ExperimentConfig& cfg) {
  if (m < 0) throw ConfigError("build_experiment: m must be nonnegative");
  if (!cfg.filter || !cfg.grid)
    throw ConfigError("build_experiment: config not resolved (filter/grid missing)");
  const int n = cfg.ising.n_sites;
  Circuit c;
  c.n_qubits = n + 1;
  c.n_clbits = m + n;

  for (int q = 1; q <= n; ++q) {
    c.add({GateKind::H, q, -1, 0.0, -1});
    c.add({GateKind::S, q, -1, 0.0, -1});
  }

  const FilterSamples samples = sample_filter(*cfg.filter, *cfg.grid);
  WGateOptions wopt;
  wopt.keep_endpoints = false;
  wopt.substeps = cfg.trotter_substeps;
  for (int step = 0; step < m; ++step) {
    c.add(trotter_tfim_evolution(cfg.ising, cfg.dt * cfg.n_t / 2, -1, cfg.n_t / 2, 1));
    c.add(dilated_w_gates(samples, cfg.ising, cfg.tau, wopt));
    c.add({GateKind::Measure, 0, -1, 0.0, step});
    c.add({GateKind::XCond, 0, -1, 0.0, step});
    c.add(trotter_tfim_evolution(cfg.ising, cfg.dt * cfg.n_t / 2, -1, cfg.n_t / 2, 1));
  }
  return c;
}

Circuit fold_gates(const Circuit& c, int fold_factor) {
  if (fold_factor < 1 || fold_factor % 2 == 0)
    throw EvenFoldFactorError("fold_gates: fold factor must be a positive odd integer");
  Circuit out;
  out.n_qubits = c.n_qubits;
  out.n_clbits = c.n_clbits;
  for (const Gate& g : c.gates) {
    if (g.kind != GateKind::RZZ) {
      out.gates.push_back(g);
      continue;
    }
    for (int k = 0; k < fold_factor; ++k) {
      Gate folded = g;
      folded.angle = (k % 2 == 0) ? g.angle : -g.angle;
      out.gates.push_back(folded);
    }
  }
  return out;
}

namespace {

Eigen::Matrix2cd gate_matrix_1q(const Gate& g) {
  Eigen::Matrix2cd m;
  const double h = 0.5 * g.angle;
  switch (g.kind) {
    case GateKind::RX:
      m << Complex(std::cos(h), 0), Complex(0, -std::sin(h)),
           Complex(0, -std::sin(h)), Complex(std::cos(h), 0);
      break;
    case GateKind::RY:
      m << Complex(std::cos(h), 0), Complex(-std::sin(h), 0),
           Complex(std::sin(h), 0), Complex(std::cos(h), 0);
      break;
    case GateKind::RZ:
      m << std::exp(Complex(0, -h)), Complex(0, 0), Complex(0, 0), std::exp(Complex(0, h));
      break;
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      m << r, r, r, -r;
      break;
    }
    case GateKind::S:
      m << 1, 0, 0, Complex(0, 1);
      break;
    case GateKind::X:
      m << 0, 1, 1, 0;
      break;
    default:
      throw NonUnitaryElementError("gate_matrix_1q: not a single-qubit unitary");
  }
  return m;
}

}  // namespace

Operator circuit_unitary(const Circuit& c) {
  if (c.n_qubits > 10)
    throw DimTooLargeError("circuit_unitary: capped at 10 qubits");
  const Eigen::Index d = Eigen::Index(1) << c.n_qubits;
  Operator u = Operator::Identity(d, d);
  for (const Gate& g : c.gates) {
    if (g.kind == GateKind::Measure || g.kind == GateKind::Reset ||
        g.kind == GateKind::XCond)
      throw NonUnitaryElementError("circuit_unitary: circuit contains non-unitary elements");
    if (g.kind == GateKind::RZZ) {
      const int p0 = c.n_qubits - 1 - g.q0;
      const int p1 = c.n_qubits - 1 - g.q1;
      const Complex minus = std::exp(Complex(0, -0.5 * g.angle));
      const Complex plus = std::exp(Complex(0, +0.5 * g.angle));
      for (Eigen::Index row = 0; row < d; ++row) {
        const bool even = (((row >> p0) ^ (row >> p1)) & 1) == 0;
        u.row(row) *= even ? minus : plus;
      }
    } else {
      const Eigen::Matrix2cd m = gate_matrix_1q(g);
      const int p = c.n_qubits - 1 - g.q0;
      const Eigen::Index stride = Eigen::Index(1) << p;
      for (Eigen::Index base = 0; base < d; base += 2 * stride)
        for (Eigen::Index i = base; i < base + stride; ++i) {
          const Eigen::RowVectorXcd top = u.row(i);
          const Eigen::RowVectorXcd bot = u.row(i + stride);
          u.row(i) = m(0, 0) * top + m(0, 1) * bot;
          u.row(i + stride) = m(1, 0) * top + m(1, 1) * bot;
        }
    }
  }
  return u;
}

namespace {

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::X: return "X";
    case GateKind::RZZ: return "RZZ";
    case GateKind::Reset: return "RESET";
    case GateKind::Measure: return "MEASURE";
    case GateKind::XCond: return "XCOND";
  }
  return "?";
}

std::string format_angle(double a) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", a);
  return buf;
}

}  // namespace

std::string circuit_to_text(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.n_qubits << " clbits " << c.n_clbits << "\n";
  for (const Gate& g : c.gates) {
    os << kind_name(g.kind) << ' ' << g.q0;
    if (g.kind == GateKind::RZZ) os << ' ' << g.q1;
    if (is_rotation(g.kind)) os << ' ' << format_angle(g.angle);
    if (g.kind == GateKind::Measure || g.kind == GateKind::XCond) os << ' ' << g.clbit;
    os << '\n';
  }
  return os.str();
}

Circuit circuit_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string word;
  Circuit c;
  if (!(is >> word) || word != "qubits" || !(is >> c.n_qubits) || !(is >> word) ||
      word != "clbits" || !(is >> c.n_clbits))
    throw ConfigError("circuit text: bad header, expected 'qubits N clbits M'");
  std::string kind;
  while (is >> kind) {
    Gate g;
    if (kind == "RX") g.kind = GateKind::RX;
    else if (kind == "RY") g.kind = GateKind::RY;
    else if (kind == "RZ") g.kind = GateKind::RZ;
    else if (kind == "H") g.kind = GateKind::H;
    else if (kind == "S") g.kind = GateKind::S;
    else if (kind == "X") g.kind = GateKind::X;
    else if (kind == "RZZ") g.kind = GateKind::RZZ;
    else if (kind == "RESET") g.kind = GateKind::Reset;
    else if (kind == "MEASURE") g.kind = GateKind::Measure;
    else if (kind == "XCOND") g.kind = GateKind::XCond;
    else throw ConfigError("circuit text: unknown gate '" + kind + "'");
    if (!(is >> g.q0)) throw ConfigError("circuit text: missing qubit index");
    if (g.kind == GateKind::RZZ && !(is >> g.q1))
      throw ConfigError("circuit text: RZZ needs two qubits");
    if (is_rotation(g.kind) && !(is >> g.angle))
      throw ConfigError("circuit text: missing angle");
    if ((g.kind == GateKind::Measure || g.kind == GateKind::XCond) && !(is >> g.clbit))
      throw ConfigError("circuit text: missing classical bit");
    c.add(g);
  }
  return c;
}

}  // namespace qdiss
