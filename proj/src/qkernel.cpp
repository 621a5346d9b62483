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

#include "qmlbench/qkernel.hpp"

#include <cmath>
#include <cstdio>

namespace qmlbench {

std::string_view to_string(KernelKind kind) {
  return kind == KernelKind::quantum ? "quantum" : "rbf";
}

double kernel_entry(const Eigen::Ref<const Eigen::VectorXd>& x,
                    const Eigen::Ref<const Eigen::VectorXd>& z, const FeatureMapSpec& spec) {
  if (x.size() != z.size())
    throw DimensionError("kernel entry between vectors of length " + std::to_string(x.size()) +
                         " and " + std::to_string(z.size()));
  const Statevector phi_x = encode_state(x, spec);
  const Statevector phi_z = encode_state(z, spec);
  return std::norm(inner_product(phi_x, phi_z));
}

KernelMatrix kernel_matrix(const Eigen::Ref<const Eigen::MatrixXd>& rows, const FeatureMapSpec& spec) {
  const Eigen::Index m = rows.rows();
  if (m < 1) throw ParameterError("kernel matrix needs at least one row");
  KernelMatrix k{Eigen::MatrixXd(m, m), KernelKind::quantum, spec, 0.0};
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) {
      k.entries(i, j) = kernel_entry(rows.row(i).transpose(), rows.row(j).transpose(), spec);
      k.entries(j, i) = k.entries(i, j);
    }
  }
  return k;
}

Eigen::MatrixXd cross_kernel(const Eigen::Ref<const Eigen::MatrixXd>& test_rows,
                             const Eigen::Ref<const Eigen::MatrixXd>& train_rows,
                             const FeatureMapSpec& spec) {
  if (test_rows.cols() != train_rows.cols())
    throw DimensionError("test and train rows have different feature counts");
  Eigen::MatrixXd out(test_rows.rows(), train_rows.rows());
  for (Eigen::Index i = 0; i < test_rows.rows(); ++i)
    for (Eigen::Index j = 0; j < train_rows.rows(); ++j)
      out(i, j) = kernel_entry(test_rows.row(i).transpose(), train_rows.row(j).transpose(), spec);
  return out;
}

KernelMatrix rbf_kernel_matrix(const Eigen::Ref<const Eigen::MatrixXd>& rows, double gamma) {
  if (!(gamma > 0.0)) throw ParameterError("rbf gamma must be > 0");
  const Eigen::Index m = rows.rows();
  KernelMatrix k{Eigen::MatrixXd(m, m), KernelKind::rbf, std::nullopt, gamma};
  for (Eigen::Index i = 0; i < m; ++i) {
    k.entries(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < m; ++j) {
      k.entries(i, j) = rbf_entry(rows.row(i), rows.row(j), gamma);
      k.entries(j, i) = k.entries(i, j);
    }
  }
  return k;
}

Eigen::MatrixXd rbf_cross_kernel(const Eigen::Ref<const Eigen::MatrixXd>& test_rows,
                                 const Eigen::Ref<const Eigen::MatrixXd>& train_rows, double gamma) {
  if (!(gamma > 0.0)) throw ParameterError("rbf gamma must be > 0");
  if (test_rows.cols() != train_rows.cols())
    throw DimensionError("test and train rows have different feature counts");
  Eigen::MatrixXd out(test_rows.rows(), train_rows.rows());
  for (Eigen::Index i = 0; i < test_rows.rows(); ++i)
    for (Eigen::Index j = 0; j < train_rows.rows(); ++j)
      out(i, j) = rbf_entry(test_rows.row(i), train_rows.row(j), gamma);
  return out;
}

void write_matrix_csv(std::ostream& os, const Eigen::Ref<const Eigen::MatrixXd>& m) {
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      if (j) os << ',';
      os << buf;
    }
    os << '\n';
  }
}

}  // namespace qmlbench
