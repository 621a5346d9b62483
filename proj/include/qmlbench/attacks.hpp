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

// Security probes: FGSM perturbations in scaled feature space and
// quantum-noise degradation of variational models.

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qmlbench/kernelmachine.hpp"
#include "qmlbench/mlp.hpp"
#include "qmlbench/varmodels.hpp"

namespace qmlbench {

/// Trained SVM together with its (scaled) training rows, so it can score new
/// points directly.
struct KernelSvm {
  SvmModel model;
  Eigen::MatrixXd train_rows;
};

double decision_value(const KernelSvm& svm, const Eigen::Ref<const Eigen::VectorXd>& x);

using AnyModel = std::variant<MlpModel, VqcModel, KernelSvm>;

/// "mlp", "vqc", "qcnn", "svm" (rbf kernel) or "qsvm" (quantum kernel).
std::string model_id(const AnyModel& model);

/// {0,1} prediction for one scaled input.
int predict_label(const AnyModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

double accuracy(const AnyModel& model, const Eigen::Ref<const Eigen::MatrixXd>& rows,
                const Eigen::Ref<const Eigen::VectorXi>& labels);

inline constexpr double kInputFdStep = 1e-4;

/// d loss / d x. MLP: exact backprop. VQC/QCNN: finite differences of the
/// cross-entropy. SVM: finite differences of -y * f(x) with y in {-1,+1}.
/// Differences are central except within `h` of the [0, pi] boundary, where
/// the one-sided difference pointing into the box is used.
Eigen::VectorXd input_gradient(const MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x, int y);
Eigen::VectorXd input_gradient(const VqcModel& model, const Eigen::Ref<const Eigen::VectorXd>& x, int y,
                               double h = kInputFdStep);
Eigen::VectorXd input_gradient(const KernelSvm& model, const Eigen::Ref<const Eigen::VectorXd>& x, int y,
                               double h = kInputFdStep);
Eigen::VectorXd input_gradient(const AnyModel& model, const Eigen::Ref<const Eigen::VectorXd>& x, int y);

/// clamp(x + epsilon * sign(grad), 0, pi). `x` must already lie in [0, pi].
Eigen::VectorXd fgsm(const AnyModel& model, const Eigen::Ref<const Eigen::VectorXd>& x, int y,
                     double epsilon);

struct AttackReport {
  std::string model_id;
  std::string attack;  // "fgsm" or "noise"
  double strength = 0.0;  // epsilon or noise probability
  double clean_accuracy = 0.0;
  double attacked_accuracy = 0.0;
  std::vector<double> perturbation_norms;  // max-norm per sample (fgsm only)
  std::uint64_t seed = 0;
  std::size_t samples = 0;
};

std::vector<AttackReport> robustness_sweep(const AnyModel& model,
                                           const Eigen::Ref<const Eigen::MatrixXd>& rows,
                                           const Eigen::Ref<const Eigen::VectorXi>& labels,
                                           const std::vector<double>& epsilons, std::uint64_t seed);

/// Accuracy when every readout is replaced by a `shots`-trajectory noisy
/// estimate. Only VQC/QCNN models are accepted.
std::vector<AttackReport> noise_degradation(const AnyModel& model,
                                            const Eigen::Ref<const Eigen::MatrixXd>& rows,
                                            const Eigen::Ref<const Eigen::VectorXi>& labels,
                                            const std::vector<double>& noise_levels, int shots,
                                            std::uint64_t seed);

}  // namespace qmlbench
