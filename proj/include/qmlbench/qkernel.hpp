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

// Fidelity quantum kernel K(x, z) = |<Phi(x)|Phi(z)>|^2 and the classical RBF
// kernel used by the baseline SVM.

#include <optional>
#include <ostream>
#include <string_view>

#include <Eigen/Dense>

#include "qmlbench/encoding.hpp"

namespace qmlbench {

enum class KernelKind { quantum, rbf };

std::string_view to_string(KernelKind kind);

struct KernelMatrix {
  Eigen::MatrixXd entries;
  KernelKind kind = KernelKind::quantum;
  std::optional<FeatureMapSpec> feature_map;  // quantum kind
  double gamma = 0.0;                         // rbf kind

  Eigen::Index size() const { return entries.rows(); }
};

/// Simulates both feature-map states from |0...0> and returns the squared
/// overlap magnitude.
double kernel_entry(const Eigen::Ref<const Eigen::VectorXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& z, const FeatureMapSpec& spec);

/// Gram matrix over the rows of `rows`. Only the upper triangle is evaluated;
/// the lower triangle is a copy, so the result is exactly symmetric.
KernelMatrix kernel_matrix(const Eigen::Ref<const Eigen::MatrixXd>& rows, const FeatureMapSpec& spec);

/// entry(i, j) = kernel_entry(test row i, train row j).
Eigen::MatrixXd cross_kernel(const Eigen::Ref<const Eigen::MatrixXd>& test_rows,
                             const Eigen::Ref<const Eigen::MatrixXd>& train_rows,
                             const FeatureMapSpec& spec);

/// exp(-gamma * ||x - z||^2).
template <typename DerivedA, typename DerivedB>
double rbf_entry(const Eigen::MatrixBase<DerivedA>& x, const Eigen::MatrixBase<DerivedB>& z,
                 double gamma) {
  return std::exp(-gamma * (x - z).squaredNorm());
}

/// Heuristic gamma = 1 / d.
inline double default_gamma(Eigen::Index n_features) {
  return 1.0 / static_cast<double>(n_features);
}

KernelMatrix rbf_kernel_matrix(const Eigen::Ref<const Eigen::MatrixXd>& rows, double gamma);

Eigen::MatrixXd rbf_cross_kernel(const Eigen::Ref<const Eigen::MatrixXd>& test_rows,
                                 const Eigen::Ref<const Eigen::MatrixXd>& train_rows, double gamma);

/// Row-major CSV of the full matrix with 17 significant digits.
void write_matrix_csv(std::ostream& os, const Eigen::Ref<const Eigen::MatrixXd>& m);

}  // namespace qmlbench
