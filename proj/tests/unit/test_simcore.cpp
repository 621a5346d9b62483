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

#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "qmlbench/simcore.hpp"

using namespace qmlbench;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

void expect_amplitudes(const Statevector& s, const oracle::Vec& want, double tol) {
  ASSERT_EQ(s.dim(), want.size());
  for (Eigen::Index i = 0; i < want.size(); ++i) {
    EXPECT_NEAR(s[i].real(), want(i).real(), tol) << "amplitude " << i;
    EXPECT_NEAR(s[i].imag(), want(i).imag(), tol) << "amplitude " << i;
  }
}

oracle::Vec basis(int n, Eigen::Index k) {
  oracle::Vec v = oracle::Vec::Zero(Eigen::Index(1) << n);
  v(k) = 1;
  return v;
}

}  // namespace

TEST(ZeroState, SingleQubit) { expect_amplitudes(new_zero_state(1), basis(1, 0), 0.0); }

TEST(ZeroState, TwoQubits) { expect_amplitudes(new_zero_state(2), basis(2, 0), 0.0); }

TEST(ZeroState, TwentyQubits) {
  const auto s = new_zero_state(20);
  EXPECT_EQ(s.dim(), 1048576);
  EXPECT_DOUBLE_EQ(s.norm_squared(), 1.0);
}

TEST(ZeroState, CapacityGuard) {
  EXPECT_THROW(new_zero_state(0), CapacityError);
  try {
    new_zero_state(25);
    FAIL() << "expected CapacityError";
  } catch (const CapacityError& e) {
    EXPECT_NE(std::string(e.what()).find("536870912 bytes"), std::string::npos) << e.what();
  }
  EXPECT_EQ(Statevector::required_bytes(24), 268435456u);
}

TEST(ApplyGate, HadamardOnZero) {
  oracle::Vec want(2);
  want << kR, kR;
  expect_amplitudes(apply_gate(new_zero_state(1), Gate::h(0)), want, 1e-15);
}

TEST(ApplyGate, XOnZero) { expect_amplitudes(apply_gate(new_zero_state(1), Gate::x(0)), basis(1, 1), 0.0); }

TEST(ApplyGate, CnotLittleEndian) {
  // (|00> + |10>)/sqrt2 in ket order q1 q0, i.e. qubit 0 set or not.
  oracle::Vec in(4);
  in << kR, kR, 0, 0;
  Statevector s(2, in);
  s = apply_gate(s, Gate::cx(0, 1));
  oracle::Vec want = oracle::controlled(2, 0, 1, oracle::pauli_x()) * in;
  expect_amplitudes(s, want, 1e-15);
  EXPECT_NEAR(std::abs(s[3]), kR, 1e-15);
  EXPECT_NEAR(std::abs(s[1]), 0.0, 1e-15);
}

TEST(ApplyGate, EveryKindMatchesDenseOracle) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int kind = 0; kind < 8; ++kind) {
    for (int trial = 0; trial < 10; ++trial) {
      oracle::Vec psi(8);
      for (auto& a : psi) a = {g(rng), g(rng)};
      psi.normalize();
      Gate gate{GateKind(kind), {trial % 3, (trial + 1) % 3}, 0.37 * trial - 1.1, {}};
      const auto got = apply_gate(Statevector(3, psi), gate);
      expect_amplitudes(got, oracle::gate(3, gate, gate.angle) * psi, 1e-13);
    }
  }
}

TEST(ApplyGate, UnboundSlotRaises) {
  EXPECT_THROW(apply_gate(new_zero_state(1), Gate::ry(0, 0.0).with_slot(0)), BindingError);
}

TEST(ApplyGate, BadTargetRaises) {
  EXPECT_THROW(apply_gate(new_zero_state(2), Gate::h(2)), IndexError);
  EXPECT_THROW(apply_gate(new_zero_state(2), Gate::h(-1)), IndexError);
  EXPECT_THROW(apply_gate(new_zero_state(2), Gate::cx(1, 1)), IndexError);
}

TEST(GateUnitary, AllKindsAreUnitary) {
  for (int kind = 0; kind < 8; ++kind) {
    for (double theta : {0.0, 0.3, -2.1, 3.14159, 7.5}) {
      const Gate g{GateKind(kind), {0, 1}, theta, {}};
      const Eigen::MatrixXcd u = gate_unitary(g);
      const double err = (u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols()))
                             .cwiseAbs()
                             .maxCoeff();
      EXPECT_LT(err, 1e-12) << gate_name(g.kind) << " theta=" << theta;
    }
  }
}

TEST(GateUnitary, RotationConventions) {
  const double t = 0.8;
  const auto rz = local_matrix<double>(GateKind::RZ, t);
  EXPECT_NEAR(std::abs(rz(0, 0) - std::polar(1.0, -t / 2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(rz(1, 1) - std::polar(1.0, t / 2)), 0.0, 1e-15);
  const auto ry = local_matrix<double>(GateKind::RY, t);
  EXPECT_NEAR(ry(0, 1).real(), -std::sin(t / 2), 1e-15);
  EXPECT_NEAR(ry(1, 0).real(), std::sin(t / 2), 1e-15);
}

TEST(ApplyCircuit, EmptyIsIdentity) {
  oracle::Vec in(4);
  in << 0.5, std::complex<double>(0, 0.5), -0.5, 0.5;
  expect_amplitudes(apply_circuit(Statevector(2, in), Circuit(2)), in, 0.0);
}

TEST(ApplyCircuit, HadamardSquared) {
  Circuit c(1);
  c.add(Gate::h(0)).add(Gate::h(0));
  expect_amplitudes(apply_circuit(new_zero_state(1), c), basis(1, 0), 1e-12);
}

TEST(ApplyCircuit, RandomThreeQubitTwelveGates) {
  std::mt19937_64 rng(2024);
  const Circuit c = oracle::random_circuit(3, 12, rng);
  expect_amplitudes(apply_circuit(new_zero_state(3), c), oracle::circuit(c) * oracle::zero_state(3), 1e-12);
}

TEST(ApplyCircuit, HundredRandomCircuitsMatchOracle) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + trial % 3;
    const Circuit c = oracle::random_circuit(n, 4 + trial % 17, rng);
    oracle::Vec psi(Eigen::Index(1) << n);
    for (auto& a : psi) a = {g(rng), g(rng)};
    psi.normalize();
    const auto got = apply_circuit(Statevector(n, psi), c);
    expect_amplitudes(got, oracle::circuit(c) * psi, 1e-12);
    EXPECT_NEAR(got.norm_squared(), 1.0, 1e-10);
  }
}

TEST(ApplyCircuit, SlotsBindInOrder) {
  Circuit c(2);
  const auto a = c.add_param("a");
  const auto b = c.add_param("b");
  c.add(Gate::ry(0, 0).with_slot(a)).add(Gate::cry(0, 1, 0).with_slot(b)).add(Gate::rx(1, 0).with_slot(a));
  Eigen::VectorXd p(2);
  p << 0.4, -1.3;
  const auto got = apply_circuit(new_zero_state(2), c, p);
  expect_amplitudes(got, oracle::circuit(c, p) * oracle::zero_state(2), 1e-13);

  const Circuit bound = bind(c, p);
  EXPECT_EQ(bound.num_params(), 0u);
  for (const auto& gate : bound.gates()) EXPECT_TRUE(gate.bound());
  expect_amplitudes(apply_circuit(new_zero_state(2), bound), oracle::circuit(c, p) * oracle::zero_state(2),
                    1e-13);
}

TEST(ApplyCircuit, ParamCountMismatchRaises) {
  Circuit c(1);
  c.add(Gate::ry(0, 0).with_slot(c.add_param("t")));
  EXPECT_THROW(apply_circuit(new_zero_state(1), c, Eigen::VectorXd(2)), BindingError);
  EXPECT_THROW(apply_circuit(new_zero_state(1), c), BindingError);
  EXPECT_THROW(bind(c, Eigen::VectorXd()), BindingError);
}

TEST(ApplyCircuit, UnknownSlotRejected) {
  Circuit c(1);
  EXPECT_THROW(c.add(Gate::ry(0, 0).with_slot(0)), BindingError);
}

TEST(Concat, RenumbersTailSlots) {
  Circuit head(2), tail(2);
  head.add(Gate::rx(0, 0).with_slot(head.add_param("h")));
  tail.add(Gate::ry(1, 0).with_slot(tail.add_param("t")));
  const Circuit c = concat(head, tail);
  ASSERT_EQ(c.num_params(), 2u);
  EXPECT_EQ(*c.gates()[1].slot, 1u);
  Eigen::VectorXd p(2);
  p << 0.25, 1.5;
  expect_amplitudes(apply_circuit(new_zero_state(2), c, p), oracle::circuit(c, p) * oracle::zero_state(2),
                    1e-13);
}

TEST(InnerProduct, Normalised) {
  std::mt19937_64 rng(3);
  const Circuit c = oracle::random_circuit(3, 20, rng);
  const auto s = apply_circuit(new_zero_state(3), c);
  const auto ip = inner_product(s, s);
  EXPECT_NEAR(ip.real(), 1.0, 1e-12);
  EXPECT_NEAR(ip.imag(), 0.0, 1e-12);
}

TEST(InnerProduct, Orthogonal) {
  const auto ip = inner_product(new_zero_state(1), apply_gate(new_zero_state(1), Gate::x(0)));
  EXPECT_EQ(ip, std::complex<double>(0.0, 0.0));
}

TEST(InnerProduct, HadamardColumn) {
  const auto ip = inner_product(new_zero_state(1), apply_gate(new_zero_state(1), Gate::h(0)));
  EXPECT_NEAR(ip.real(), kR, 1e-15);
}

TEST(InnerProduct, ConjugatesFirstArgument) {
  oracle::Vec a(2), b(2);
  a << std::complex<double>(0, 1), 0;
  b << 1, 0;
  EXPECT_EQ(inner_product(Statevector(1, a), Statevector(1, b)), std::complex<double>(0, -1));
}

TEST(InnerProduct, DimensionMismatch) {
  EXPECT_THROW(inner_product(new_zero_state(1), new_zero_state(2)), DimensionError);
}

TEST(ExpectationZ, BasisStates) {
  EXPECT_EQ(expectation_z(new_zero_state(1), 0), 1.0);
  EXPECT_EQ(expectation_z(apply_gate(new_zero_state(1), Gate::x(0)), 0), -1.0);
  EXPECT_NEAR(expectation_z(apply_gate(new_zero_state(1), Gate::h(0)), 0), 0.0, 1e-12);
}

TEST(ExpectationZ, MatchesDenseObservable) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Circuit c = oracle::random_circuit(3, 15, rng);
    const auto s = apply_circuit(new_zero_state(3), c);
    const oracle::Vec psi = oracle::circuit(c) * oracle::zero_state(3);
    for (int q = 0; q < 3; ++q) {
      const double z = expectation_z(s, q);
      EXPECT_NEAR(z, oracle::expect_z(psi, 3, q), 1e-12);
      EXPECT_LE(std::abs(z), 1.0 + 1e-12);
    }
  }
}

TEST(ExpectationZ, BadQubit) {
  EXPECT_THROW(expectation_z(new_zero_state(2), 2), IndexError);
}

TEST(NoisyExpectation, ZeroNoiseIsExact) {
  std::mt19937_64 rng(9);
  const Circuit c = oracle::random_circuit(3, 10, rng);
  const double exact = expectation_z(apply_circuit(new_zero_state(3), c), 1);
  for (std::uint64_t seed : {0ull, 1ull, 99ull})
    EXPECT_EQ(noisy_expectation_z(c, Eigen::VectorXd(), 1, 0.0, 5, seed), exact);
}

TEST(NoisyExpectation, FullNoiseScrambles) {
  // Each insertion scales the Bloch vector by -1/3; six gates leave |<Z>| <= 3^-6.
  Circuit c(1);
  for (int k = 0; k < 6; ++k) c.add(Gate::ry(0, 0.1 * k));
  const double z = noisy_expectation_z(c, Eigen::VectorXd(), 0, 1.0, 10000, 4);
  EXPECT_LE(std::abs(z), 0.05);
}

TEST(NoisyExpectation, SingleInsertionContractsByThird) {
  Circuit c(1);
  c.add(Gate::rx(0, 0.0));
  const double z = noisy_expectation_z(c, Eigen::VectorXd(), 0, 1.0, 30000, 8);
  EXPECT_NEAR(z, -1.0 / 3.0, 0.02);
}

TEST(NoisyExpectation, Deterministic) {
  std::mt19937_64 rng(10);
  const Circuit c = oracle::random_circuit(2, 12, rng);
  const double a = noisy_expectation_z(c, Eigen::VectorXd(), 0, 0.2, 300, 17);
  const double b = noisy_expectation_z(c, Eigen::VectorXd(), 0, 0.2, 300, 17);
  EXPECT_EQ(a, b);
}

TEST(NoisyExpectation, InvalidArguments) {
  Circuit c(1);
  c.add(Gate::h(0));
  EXPECT_THROW(noisy_expectation_z(c, Eigen::VectorXd(), 0, -0.1, 10, 0), ParameterError);
  EXPECT_THROW(noisy_expectation_z(c, Eigen::VectorXd(), 0, 1.5, 10, 0), ParameterError);
  EXPECT_THROW(noisy_expectation_z(c, Eigen::VectorXd(), 0, 0.1, 0, 0), ParameterError);
}

TEST(Precision, SinglePrecisionStatevector) {
  std::mt19937_64 rng(12);
  const Circuit c = oracle::random_circuit(3, 12, rng);
  const auto s = apply_circuit(new_zero_state<float>(3), c);
  const oracle::Vec want = oracle::circuit(c) * oracle::zero_state(3);
  for (Eigen::Index i = 0; i < want.size(); ++i) EXPECT_NEAR(std::abs(std::complex<double>(s[i]) - want(i)), 0.0, 1e-5);
}
