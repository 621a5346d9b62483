// Copyright 2026 The qmlbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Exact statevector simulation of small parameterized circuits.
//
// Qubit ordering is little-endian: qubit q is bit q of the amplitude index,
// so qubit 0 is the least-significant bit. For two-qubit gates targets[0] is
// the control (CX, CRY) and targets[1] the target; CZ is symmetric.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qmlbench/errors.hpp"

namespace qmlbench {

inline constexpr int kMaxQubits = 24;

enum class GateKind { H, X, RX, RY, RZ, CX, CZ, CRY };

constexpr bool is_rotation(GateKind kind) {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ ||
         kind == GateKind::CRY;
}

constexpr int arity(GateKind kind) {
  return (kind == GateKind::CX || kind == GateKind::CZ || kind == GateKind::CRY) ? 2 : 1;
}

constexpr std::string_view gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::CX: return "CX";
    case GateKind::CZ: return "CZ";
    case GateKind::CRY: return "CRY";
  }
  return "?";
}

/// A single gate. Rotation gates either carry a fixed angle or reference a
/// parameter slot of the owning circuit; a slotted gate is unbound until a
/// parameter vector is supplied.
struct Gate {
  GateKind kind = GateKind::H;
  std::array<int, 2> targets{0, 0};
  double angle = 0.0;
  std::optional<std::size_t> slot;

  int arity() const { return qmlbench::arity(kind); }
  bool bound() const { return !slot.has_value(); }

  static Gate h(int q) { return {GateKind::H, {q, 0}, 0.0, {}}; }
  static Gate x(int q) { return {GateKind::X, {q, 0}, 0.0, {}}; }
  static Gate rx(int q, double theta) { return {GateKind::RX, {q, 0}, theta, {}}; }
  static Gate ry(int q, double theta) { return {GateKind::RY, {q, 0}, theta, {}}; }
  static Gate rz(int q, double theta) { return {GateKind::RZ, {q, 0}, theta, {}}; }
  static Gate cx(int control, int target) { return {GateKind::CX, {control, target}, 0.0, {}}; }
  static Gate cz(int a, int b) { return {GateKind::CZ, {a, b}, 0.0, {}}; }
  static Gate cry(int control, int target, double theta) {
    return {GateKind::CRY, {control, target}, theta, {}};
  }
  /// Same gate with its angle drawn from parameter `slot` at bind time.
  Gate with_slot(std::size_t s) const {
    Gate g = *this;
    g.slot = s;
    return g;
  }

  friend bool operator==(const Gate&, const Gate&) = default;
};

std::string to_string(const Gate& gate);

/// Ordered gate list over a fixed register with named free parameters.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1) throw IndexError("circuit needs at least one qubit");
  }

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::vector<Gate>& gates() { return gates_; }
  const std::vector<std::string>& param_slots() const { return slots_; }
  std::size_t num_params() const { return slots_.size(); }
  bool empty() const { return gates_.empty(); }

  /// Registers a named parameter and returns its slot index.
  std::size_t add_param(std::string name) {
    slots_.push_back(std::move(name));
    return slots_.size() - 1;
  }

  Circuit& add(const Gate& gate) {
    check_targets(gate, n_qubits_);
    if (gate.slot && *gate.slot >= slots_.size())
      throw BindingError("gate references unknown parameter slot " + std::to_string(*gate.slot));
    gates_.push_back(gate);
    return *this;
  }

  static void check_targets(const Gate& gate, int n_qubits) {
    for (int k = 0; k < gate.arity(); ++k) {
      const int q = gate.targets[k];
      if (q < 0 || q >= n_qubits)
        throw IndexError(std::string(gate_name(gate.kind)) + " target " + std::to_string(q) +
                         " out of range for " + std::to_string(n_qubits) + " qubits");
    }
    if (gate.arity() == 2 && gate.targets[0] == gate.targets[1])
      throw IndexError(std::string(gate_name(gate.kind)) + " targets must be distinct");
  }

 private:
  int n_qubits_ = 1;
  std::vector<Gate> gates_;
  std::vector<std::string> slots_;
};

/// Substitutes `params` into every slotted gate; the result has no slots.
Circuit bind(const Circuit& circuit, const Eigen::Ref<const Eigen::VectorXd>& params);

/// Appends `tail` after `head`. Slots of `tail` are renumbered after those of
/// `head`, so the combined parameter vector is [head params, tail params].
Circuit concat(const Circuit& head, const Circuit& tail);

template <typename Real>
using Matrix2c = Eigen::Matrix<std::complex<Real>, 2, 2>;

/// 2x2 unitary of a single-qubit gate, or of the target action of a
/// controlled gate (X for CX, Z for CZ, RY for CRY).
template <typename Real>
Matrix2c<Real> local_matrix(GateKind kind, Real theta) {
  using C = std::complex<Real>;
  const Real half = theta / Real(2);
  const Real c = std::cos(half);
  const Real s = std::sin(half);
  Matrix2c<Real> m;
  switch (kind) {
    case GateKind::H: {
      const Real r = Real(1) / std::sqrt(Real(2));
      m << C(r), C(r), C(r), C(-r);
      break;
    }
    case GateKind::X:
    case GateKind::CX: m << C(0), C(1), C(1), C(0); break;
    case GateKind::CZ: m << C(1), C(0), C(0), C(-1); break;
    case GateKind::RX: m << C(c), C(0, -s), C(0, -s), C(c); break;
    case GateKind::RY:
    case GateKind::CRY: m << C(c), C(-s), C(s), C(c); break;
    case GateKind::RZ: m << C(c, -s), C(0), C(0), C(c, s); break;
  }
  return m;
}

/// Full unitary of a bound gate on its own qubits, in local little-endian
/// order (targets[0] is bit 0). Size 2x2 or 4x4.
template <typename Real = double>
Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic> gate_unitary(const Gate& gate) {
  using C = std::complex<Real>;
  using M = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
  const Matrix2c<Real> local = local_matrix<Real>(gate.kind, Real(gate.angle));
  if (gate.arity() == 1) return M(local);
  // control = bit 0, target = bit 1.
  M u = M::Identity(4, 4);
  const int idx[2] = {1, 3};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) u(idx[r], idx[c]) = local(r, c);
  return u;
}

/// 2^n complex amplitudes of an n-qubit pure state.
template <typename Real>
class BasicStatevector {
 public:
  using Scalar = std::complex<Real>;
  using Amplitudes = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  /// |0...0> on n qubits.
  explicit BasicStatevector(int n_qubits) : n_qubits_(n_qubits) {
    check_capacity(n_qubits);
    amps_ = Amplitudes::Zero(Eigen::Index(1) << n_qubits);
    amps_(0) = Scalar(1);
  }

  BasicStatevector(int n_qubits, Amplitudes amps) : n_qubits_(n_qubits), amps_(std::move(amps)) {
    check_capacity(n_qubits);
    if (amps_.size() != (Eigen::Index(1) << n_qubits))
      throw DimensionError("statevector length must be 2^n_qubits");
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Amplitudes& amplitudes() const { return amps_; }
  Amplitudes& amplitudes() { return amps_; }
  const Scalar& operator[](Eigen::Index i) const { return amps_(i); }
  Real norm_squared() const { return amps_.squaredNorm(); }

  static std::uint64_t required_bytes(int n_qubits) {
    return std::uint64_t(sizeof(Scalar)) << n_qubits;
  }

  static void check_capacity(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
      const std::string need =
          n_qubits >= 1 && n_qubits < 63 ? std::to_string(required_bytes(n_qubits)) + " bytes"
                                         : std::string("an unrepresentable number of bytes");
      throw CapacityError("n_qubits=" + std::to_string(n_qubits) + " outside [1, " +
                          std::to_string(kMaxQubits) + "]; a statevector needs " +
                          std::to_string(sizeof(Scalar)) + "*2^n = " + need);
    }
  }

 private:
  int n_qubits_;
  Amplitudes amps_;
};

using Statevector = BasicStatevector<double>;

template <typename Real = double>
BasicStatevector<Real> new_zero_state(int n_qubits) {
  return BasicStatevector<Real>(n_qubits);
}

namespace detail {

template <typename Real>
void apply_local(typename BasicStatevector<Real>::Amplitudes& a, int q, const Matrix2c<Real>& m) {
  const Eigen::Index stride = Eigen::Index(1) << q;
  const Eigen::Index dim = a.size();
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index k = base; k < base + stride; ++k) {
      const auto a0 = a(k);
      const auto a1 = a(k + stride);
      a(k) = m(0, 0) * a0 + m(0, 1) * a1;
      a(k + stride) = m(1, 0) * a0 + m(1, 1) * a1;
    }
  }
}

template <typename Real>
void apply_controlled(typename BasicStatevector<Real>::Amplitudes& a, int control, int target,
                      const Matrix2c<Real>& m) {
  const Eigen::Index cmask = Eigen::Index(1) << control;
  const Eigen::Index stride = Eigen::Index(1) << target;
  const Eigen::Index dim = a.size();
  for (Eigen::Index base = 0; base < dim; base += 2 * stride) {
    for (Eigen::Index k = base; k < base + stride; ++k) {
      if ((k & cmask) == 0) continue;
      const auto a0 = a(k);
      const auto a1 = a(k + stride);
      a(k) = m(0, 0) * a0 + m(0, 1) * a1;
      a(k + stride) = m(1, 0) * a0 + m(1, 1) * a1;
    }
  }
}

template <typename Real>
void apply_bound(BasicStatevector<Real>& state, GateKind kind, const std::array<int, 2>& t,
                 Real theta) {
  auto& a = state.amplitudes();
  switch (kind) {
    case GateKind::X: {
      const Eigen::Index stride = Eigen::Index(1) << t[0];
      for (Eigen::Index base = 0; base < a.size(); base += 2 * stride)
        for (Eigen::Index k = base; k < base + stride; ++k) std::swap(a(k), a(k + stride));
      return;
    }
    case GateKind::CZ: {
      const Eigen::Index mask = (Eigen::Index(1) << t[0]) | (Eigen::Index(1) << t[1]);
      for (Eigen::Index k = 0; k < a.size(); ++k)
        if ((k & mask) == mask) a(k) = -a(k);
      return;
    }
    case GateKind::CX:
    case GateKind::CRY:
      apply_controlled<Real>(a, t[0], t[1], local_matrix<Real>(kind, theta));
      return;
    default:
      apply_local<Real>(a, t[0], local_matrix<Real>(kind, theta));
      return;
  }
}

/// Pauli X (0), Y (1) or Z (2) on qubit q; used by noisy trajectories.
template <typename Real>
void apply_pauli(BasicStatevector<Real>& state, int q, int which) {
  using C = std::complex<Real>;
  auto& a = state.amplitudes();
  const Eigen::Index stride = Eigen::Index(1) << q;
  for (Eigen::Index base = 0; base < a.size(); base += 2 * stride) {
    for (Eigen::Index k = base; k < base + stride; ++k) {
      const C a0 = a(k);
      const C a1 = a(k + stride);
      switch (which) {
        case 0: a(k) = a1; a(k + stride) = a0; break;
        case 1: a(k) = C(0, -1) * a1; a(k + stride) = C(0, 1) * a0; break;
        default: a(k + stride) = -a1; break;
      }
    }
  }
}

}  // namespace detail

/// Applies a bound gate in place.
template <typename Real>
void apply_gate_inplace(BasicStatevector<Real>& state, const Gate& gate) {
  if (!gate.bound())
    throw BindingError(std::string(gate_name(gate.kind)) + " gate has unbound parameter slot " +
                       std::to_string(*gate.slot));
  Circuit::check_targets(gate, state.n_qubits());
  detail::apply_bound(state, gate.kind, gate.targets, Real(gate.angle));
}

template <typename Real>
BasicStatevector<Real> apply_gate(BasicStatevector<Real> state, const Gate& gate) {
  apply_gate_inplace(state, gate);
  return state;
}

template <typename Real>
void apply_circuit_inplace(BasicStatevector<Real>& state, const Circuit& circuit,
                           const Eigen::Ref<const Eigen::VectorXd>& params) {
  if (static_cast<std::size_t>(params.size()) != circuit.num_params())
    throw BindingError("circuit has " + std::to_string(circuit.num_params()) +
                       " parameter slots but " + std::to_string(params.size()) +
                       " values were supplied");
  if (circuit.n_qubits() != state.n_qubits())
    throw DimensionError("circuit acts on " + std::to_string(circuit.n_qubits()) +
                         " qubits, state has " + std::to_string(state.n_qubits()));
  for (const Gate& g : circuit.gates()) {
    const double theta = g.slot ? params(static_cast<Eigen::Index>(*g.slot)) : g.angle;
    detail::apply_bound(state, g.kind, g.targets, Real(theta));
  }
}

template <typename Real>
BasicStatevector<Real> apply_circuit(BasicStatevector<Real> state, const Circuit& circuit,
                                     const Eigen::Ref<const Eigen::VectorXd>& params) {
  apply_circuit_inplace(state, circuit, params);
  return state;
}

/// Circuit without free parameters applied to `state`.
template <typename Real>
BasicStatevector<Real> apply_circuit(BasicStatevector<Real> state, const Circuit& circuit) {
  apply_circuit_inplace(state, circuit, Eigen::VectorXd());
  return state;
}

/// <a|b> = sum_i conj(a_i) b_i.
template <typename Real>
std::complex<Real> inner_product(const BasicStatevector<Real>& a, const BasicStatevector<Real>& b) {
  if (a.n_qubits() != b.n_qubits())
    throw DimensionError("inner product of " + std::to_string(a.n_qubits()) + "- and " +
                         std::to_string(b.n_qubits()) + "-qubit states");
  return a.amplitudes().dot(b.amplitudes());
}

/// <Z_q> on a pure state.
template <typename Real>
Real expectation_z(const BasicStatevector<Real>& state, int qubit) {
  if (qubit < 0 || qubit >= state.n_qubits())
    throw IndexError("readout qubit " + std::to_string(qubit) + " out of range");
  const Eigen::Index mask = Eigen::Index(1) << qubit;
  const auto& a = state.amplitudes();
  Real plus = 0, minus = 0;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    if (k & mask)
      minus += std::norm(a(k));
    else
      plus += std::norm(a(k));
  }
  return plus - minus;
}

/// Average of <Z_q> over `shots` stochastic Pauli trajectories starting from
/// |0...0>. After every gate, each qubit the gate touched independently
/// receives, with probability noise_p, one of X, Y, Z chosen uniformly.
template <typename Real = double>
Real noisy_expectation_z(const Circuit& circuit, const Eigen::Ref<const Eigen::VectorXd>& params,
                         int qubit, double noise_p, int shots, std::uint64_t seed) {
  if (!(noise_p >= 0.0 && noise_p <= 1.0))
    throw ParameterError("noise probability must lie in [0, 1]");
  if (shots < 1) throw ParameterError("shots must be >= 1");
  if (qubit < 0 || qubit >= circuit.n_qubits())
    throw IndexError("readout qubit " + std::to_string(qubit) + " out of range");
  if (static_cast<std::size_t>(params.size()) != circuit.num_params())
    throw BindingError("parameter count mismatch in noisy evaluation");

  if (noise_p == 0.0) {
    return expectation_z(apply_circuit(BasicStatevector<Real>(circuit.n_qubits()), circuit, params),
                         qubit);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> pauli(0, 2);
  Real total = 0;
  for (int shot = 0; shot < shots; ++shot) {
    BasicStatevector<Real> state(circuit.n_qubits());
    for (const Gate& g : circuit.gates()) {
      const double theta = g.slot ? params(static_cast<Eigen::Index>(*g.slot)) : g.angle;
      detail::apply_bound(state, g.kind, g.targets, Real(theta));
      for (int k = 0; k < g.arity(); ++k)
        if (coin(rng) < noise_p) detail::apply_pauli(state, g.targets[k], pauli(rng));
    }
    total += expectation_z(state, qubit);
  }
  return total / Real(shots);
}

}  // namespace qmlbench
