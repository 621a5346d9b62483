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

// Variational quantum classifier and quantum CNN: ansatz construction,
// forward evaluation, cross-entropy cost, parameter-shift gradients and the
// SPSA / gradient-descent training loop.

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qmlbench/encoding.hpp"
#include "qmlbench/simcore.hpp"

namespace qmlbench {

enum class ModelKind { vqc, qcnn };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view s);

/// QCNN layer plan over N = 2^L qubits. Each layer has one shared
/// convolution block (3 angles) and one shared pooling block (3 angles), so
/// the parameter count is 6 log2(N).
struct QcnnSpec {
  static constexpr int conv_params_per_layer = 3;
  static constexpr int pool_params_per_layer = 3;

  int n_qubits = 2;

  int layers() const;
  std::size_t param_count() const {
    return static_cast<std::size_t>(layers()) * (conv_params_per_layer + pool_params_per_layer);
  }
};

/// Hardware-efficient ansatz: per layer RY on every qubit followed by a CZ
/// ring. A 2-qubit ring is a single CZ(0,1); a single qubit has no ring.
Circuit build_ansatz(int n_qubits, int layers);

/// Convolution on each adjacent active pair (p, s): RY(a) p, RY(b) s,
/// CZ(p, s), RY(c) p. Pooling: CRY(d) controlled by s onto p, then RZ(e),
/// RY(f) on p; s is discarded. Angles are shared within a layer. Qubit 0 is
/// the last survivor and the readout.
Circuit build_qcnn(const QcnnSpec& spec);

struct VqcModel {
  ModelKind kind = ModelKind::vqc;
  FeatureMapSpec feature_map;
  int layers = 1;  // vqc only
  Circuit ansatz;
  Eigen::VectorXd theta;
  int readout_qubit = 0;

  std::size_t num_params() const { return ansatz.num_params(); }
};

VqcModel make_vqc(const FeatureMapSpec& feature_map, int layers);
VqcModel make_qcnn(const FeatureMapSpec& feature_map);

/// Feature map followed by the ansatz, as one circuit whose parameters are
/// the ansatz parameters.
Circuit full_circuit(const VqcModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

/// <Z_readout> after ansatz(theta) feature_map(x) |0...0>.
double readout_expectation(const VqcModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

/// (1 + <Z_readout>) / 2.
double forward(const VqcModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Class 1 when forward(x) >= 0.5.
Eigen::VectorXi predict(const VqcModel& model, const Eigen::Ref<const Eigen::MatrixXd>& rows);

inline constexpr double kProbabilityClamp = 1e-12;

/// Binary cross-entropy of probability p against label y, p clamped to
/// [1e-12, 1 - 1e-12].
double bce(double p, int y);

/// Mean binary cross-entropy over the rows.
double cost(const VqcModel& model, const Eigen::Ref<const Eigen::MatrixXd>& rows,
            const Eigen::Ref<const Eigen::VectorXi>& labels);

/// Exact gradient of cost() with respect to theta. Each occurrence of a
/// parameter contributes its own shift term: two-term (+-pi/2) for RX/RY/RZ,
/// four-term (+-pi/2, +-3pi/2) for CRY.
Eigen::VectorXd grad_parameter_shift(const VqcModel& model,
                                     const Eigen::Ref<const Eigen::MatrixXd>& rows,
                                     const Eigen::Ref<const Eigen::VectorXi>& labels);

enum class Optimizer { spsa, gradient_descent };

std::string_view to_string(Optimizer opt);
Optimizer parse_optimizer(std::string_view s);

struct SpsaSchedule {
  double a = 0.2;
  double c = 0.1;
  double A = 20.0;
  double alpha = 0.602;
  double gamma = 0.101;
};

struct TrainConfig {
  Optimizer optimizer = Optimizer::gradient_descent;
  double learning_rate = 0.1;
  int iterations = 100;
  std::uint64_t seed = 0;
  SpsaSchedule spsa;
};

using CostFn = std::function<double(const Eigen::VectorXd&)>;

/// One SPSA step at iteration k >= 1 with a Rademacher perturbation drawn
/// from `seed`.
Eigen::VectorXd spsa_step(const Eigen::VectorXd& theta, const CostFn& cost_fn, int k,
                          const SpsaSchedule& schedule, std::uint64_t seed);

struct TrainResult {
  VqcModel model;                  // theta = best theta seen
  std::vector<double> loss_trace;  // initial loss, then one entry per step
  std::size_t best_index = 0;
};

/// Trains `model` from theta0 ~ Uniform(-pi, pi) drawn from config.seed.
/// Any theta already on the model is ignored.
TrainResult train(VqcModel model, const Eigen::Ref<const Eigen::MatrixXd>& rows,
                  const Eigen::Ref<const Eigen::VectorXi>& labels, const TrainConfig& config);

/// Stream of per-step seeds derived from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace qmlbench
