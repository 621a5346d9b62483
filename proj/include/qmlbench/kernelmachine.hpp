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

// Binary soft-margin SVM on a precomputed kernel, solved with SMO using
// second-order working-set selection.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qmlbench/qkernel.hpp"

namespace qmlbench {

struct SvmOptions {
  double C = 1.0;
  double tol = 1e-3;
  /// Iteration cap in sweeps; one sweep is m pair updates.
  long max_passes = 100000;
  std::uint64_t seed = 0;
  /// Keep the dual objective after every pair update in SvmModel::objective_trace.
  bool record_objective = false;
};

struct SvmModel {
  Eigen::VectorXd alpha;
  Eigen::VectorXd dual_coefs;  // alpha_i * y_i
  double bias = 0.0;
  std::vector<Eigen::Index> support_indices;
  double C = 1.0;
  double tol = 1e-3;
  std::uint64_t seed = 0;

  KernelKind kernel_kind = KernelKind::quantum;
  std::optional<FeatureMapSpec> feature_map;
  double gamma = 0.0;

  long iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;

  Eigen::Index train_size() const { return dual_coefs.size(); }
};

/// Maps {0,1} labels to {-1,+1}.
Eigen::VectorXi to_signed_labels(const Eigen::Ref<const Eigen::VectorXi>& labels01);

/// `labels` are +1/-1 and must contain both classes. The solver itself is
/// deterministic; `options.seed` is recorded on the model.
SvmModel train_svm(const KernelMatrix& kernel, const Eigen::Ref<const Eigen::VectorXi>& labels,
                   const SvmOptions& options = {});

/// sum_i dual_coefs[i] * kernel_row[i] + bias.
double decision_value(const SvmModel& model, const Eigen::Ref<const Eigen::VectorXd>& kernel_row);

/// Decision values for each row of a (queries x train) kernel block.
Eigen::VectorXd decision_values(const SvmModel& model,
                                const Eigen::Ref<const Eigen::MatrixXd>& kernel_rows);

/// +1/-1 per row; a decision value of exactly 0 maps to +1.
Eigen::VectorXi predict(const SvmModel& model, const Eigen::Ref<const Eigen::MatrixXd>& kernel_rows);

/// Dual objective sum(alpha) - 1/2 sum_ij alpha_i alpha_j y_i y_j K_ij.
double dual_objective(const Eigen::Ref<const Eigen::MatrixXd>& kernel,
                      const Eigen::Ref<const Eigen::VectorXi>& labels,
                      const Eigen::Ref<const Eigen::VectorXd>& alpha);

}  // namespace qmlbench
