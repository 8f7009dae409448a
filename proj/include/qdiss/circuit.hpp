#pragma once

#include <string>
#include <vector>

#include "qdiss/config.hpp"
#include "qdiss/filter.hpp"
#include "qdiss/model.hpp"
#include "qdiss/opalg.hpp"

namespace qdiss {

// Gate conventions (pinned by tests):
//   RX(t) = exp(-i t X / 2), RY(t) = exp(-i t Y / 2), RZ(t) = exp(-i t Z / 2)
//   RZZ(t) = exp(-i t Z(x)Z / 2)
//   H = Hadamard, S = diag(1, i)
//   Measure writes one classical bit; XCond applies X when its bit is 1.
enum class GateKind { RX, RY, RZ, H, S, X, RZZ, Reset, Measure, XCond };

struct Gate {
  GateKind kind;
  int q0 = 0;
  int q1 = -1;        // second qubit for RZZ
  double angle = 0.0; // rotation kinds only
  int clbit = -1;     // Measure destination / XCond source
};

struct Circuit {
  int n_qubits = 0;
  int n_clbits = 0;
  std::vector<Gate> gates;

  void add(const Gate& g);
  void add(std::vector<Gate> more);
  int count(GateKind kind) const;
  int rzz_count() const { return count(GateKind::RZZ); }
};

bool is_rotation(GateKind k);
bool is_diagonal(GateKind k);
bool is_unitary_1q(GateKind k);

// State preparation + measurements + resets, the SPAM budget of a circuit.
int spam_event_count(const Circuit& c);

// One second-order Trotter step of exp(sign * i * H * dt) for the open-chain
// transverse-field Ising Hamiltonian: a half RX layer, the RZZ bond layer,
// and the mirrored half RX layer. Acts on qubits offset..offset+N-1.
// Angles: RX(-sign * Bx * dt) halves split the field term; RZZ(-sign * 2 J dt)
// realizes exp(sign * i * J * dt * ZZ) per bond. Exact zero angles are pruned.
std::vector<Gate> trotter_tfim_step(const IsingParams& p, double dt, int sign,
                                    int offset = 0);

// n second-order steps approximating exp(sign * i * H * t).
std::vector<Gate> trotter_tfim_evolution(const IsingParams& p, double t, int sign,
                                         int steps, int offset = 0);

struct WGateOptions {
  bool keep_endpoints = false;  // emit the e^{+-iH s_max} boundary evolutions
  int substeps = 1;             // Trotter steps per e^{+-iH delta_s} block
  bool merge_center = true;     // merge the doubled turning-point interaction
};

// Gate realization of the dilated unitary W(sqrt(tau)) over N+1 qubits.
// Qubit 0 is the ancilla; the jump couples to system site 0 (qubit 1).
// Palindromic over the sample grid; each interaction term is
// H_a RZZ(sqrt(tau) delta_s |f(s_l)|) H_a conjugated by ancilla RZ phases.
std::vector<Gate> dilated_w_gates(const FilterSamples& samples, const IsingParams& p,
                                  double tau, const WGateOptions& opt);

enum class MeasureBasis { zz, x };

// Full estimation circuit for time step m (Y-eigenstate preparation, m
// protocol steps with mid-circuit ancilla measure + conditional-X reset,
// basis rotation, final system measurements). Boundary evolutions of the
// dilated blocks are dropped throughout; interior ones cancel pairwise.
Circuit build_experiment(int m, const ExperimentConfig& cfg, MeasureBasis basis);

// Same as build_experiment but without the final basis rotation and system
// measurements; used by the density backend to inspect the evolved state.
Circuit build_state_circuit(int m, const ExperimentConfig& cfg);

// RZZ(t) -> [RZZ(t) RZZ(-t)]^{(G-1)/2} RZZ(t), G odd. Multiplies the RZZ
// count by exactly G and leaves the noiseless unitary unchanged.
Circuit fold_gates(const Circuit& c, int fold_factor);

// Product of the gate matrices (measurement-free circuits, <= 10 qubits).
Operator circuit_unitary(const Circuit& c);

// Line-oriented text format: "qubits N clbits M" header, then one gate per
// line "KIND q0 [q1] [angle] [clbit]", angles with 17 significant digits.
std::string circuit_to_text(const Circuit& c);
Circuit circuit_from_text(const std::string& text);

}  // namespace qdiss
