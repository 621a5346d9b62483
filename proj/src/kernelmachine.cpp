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

#include "qmlbench/kernelmachine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qmlbench {

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_inputs(const KernelMatrix& kernel, const Eigen::Ref<const Eigen::VectorXi>& y,
                  const SvmOptions& opt) {
  const Eigen::Index m = kernel.size();
  if (kernel.entries.cols() != m) throw KernelError("kernel matrix must be square");
  if (y.size() != m)
    throw DimensionError("kernel has " + std::to_string(m) + " rows but " +
                         std::to_string(y.size()) + " labels were given");
  if (!(opt.C > 0.0)) throw ParameterError("C must be > 0");
  if (!(opt.tol > 0.0)) throw ParameterError("tol must be > 0");
  if (opt.max_passes < 1) throw ParameterError("max_passes must be >= 1");
  bool pos = false, neg = false;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (y(i) == 1)
      pos = true;
    else if (y(i) == -1)
      neg = true;
    else
      throw DataError("SVM labels must be +1 or -1");
  }
  if (!pos || !neg) throw DataError("SVM training needs both classes present");
  if ((kernel.entries - kernel.entries.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw KernelError("kernel matrix is not symmetric");
}

}  // namespace

Eigen::VectorXi to_signed_labels(const Eigen::Ref<const Eigen::VectorXi>& labels01) {
  Eigen::VectorXi out(labels01.size());
  for (Eigen::Index i = 0; i < labels01.size(); ++i) {
    if (labels01(i) != 0 && labels01(i) != 1) throw DataError("labels must be 0 or 1");
    out(i) = labels01(i) == 1 ? 1 : -1;
  }
  return out;
}

double dual_objective(const Eigen::Ref<const Eigen::MatrixXd>& kernel,
                      const Eigen::Ref<const Eigen::VectorXi>& labels,
                      const Eigen::Ref<const Eigen::VectorXd>& alpha) {
  const Eigen::VectorXd ay = alpha.cwiseProduct(labels.cast<double>());
  return alpha.sum() - 0.5 * ay.dot(kernel * ay);
}

SvmModel train_svm(const KernelMatrix& kernel, const Eigen::Ref<const Eigen::VectorXi>& y,
                   const SvmOptions& opt) {
  check_inputs(kernel, y, opt);
  const Eigen::MatrixXd& K = kernel.entries;
  const Eigen::Index m = K.rows();
  const double C = opt.C;

  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(m);
  // Gradient of 1/2 a'Qa - e'a with Q_ij = y_i y_j K_ij.
  Eigen::VectorXd grad = Eigen::VectorXd::Constant(m, -1.0);
  auto at_upper = [&](Eigen::Index t) { return alpha(t) >= C; };
  auto at_lower = [&](Eigen::Index t) { return alpha(t) <= 0.0; };
  auto q = [&](Eigen::Index a, Eigen::Index b) { return double(y(a) * y(b)) * K(a, b); };

  SvmModel model;
  model.C = C;
  model.tol = opt.tol;
  model.seed = opt.seed;
  model.kernel_kind = kernel.kind;
  model.feature_map = kernel.feature_map;
  model.gamma = kernel.gamma;

  const long cap = opt.max_passes * static_cast<long>(m);
  long iter = 0;
  bool converged = false;
  for (; iter < cap; ++iter) {
    Eigen::Index i = -1;
    double gmax = -kInf;
    for (Eigen::Index t = 0; t < m; ++t) {
      if (y(t) == 1) {
        if (!at_upper(t) && -grad(t) >= gmax) gmax = -grad(t), i = t;
      } else {
        if (!at_lower(t) && grad(t) >= gmax) gmax = grad(t), i = t;
      }
    }

    Eigen::Index j = -1;
    double gmax2 = -kInf;
    double best = kInf;
    for (Eigen::Index t = 0; t < m && i >= 0; ++t) {
      double diff = 0.0;
      if (y(t) == 1) {
        if (at_lower(t)) continue;
        gmax2 = std::max(gmax2, grad(t));
        diff = gmax + grad(t);
      } else {
        if (at_upper(t)) continue;
        gmax2 = std::max(gmax2, -grad(t));
        diff = gmax - grad(t);
      }
      if (diff > 0.0) {
        double quad = K(i, i) + K(t, t) - 2.0 * K(i, t);
        if (quad <= 0.0) quad = kTau;
        const double obj = -(diff * diff) / quad;
        if (obj <= best) best = obj, j = t;
      }
    }

    if (i < 0 || j < 0 || gmax + gmax2 < opt.tol) {
      converged = true;
      break;
    }

    const double old_i = alpha(i);
    const double old_j = alpha(j);
    if (y(i) != y(j)) {
      double quad = K(i, i) + K(j, j) + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad(i) - grad(j)) / quad;
      const double diff = alpha(i) - alpha(j);
      alpha(i) += delta;
      alpha(j) += delta;
      if (diff > 0.0) {
        if (alpha(j) < 0.0) alpha(j) = 0.0, alpha(i) = diff;
      } else {
        if (alpha(i) < 0.0) alpha(i) = 0.0, alpha(j) = -diff;
      }
      if (diff > 0.0) {
        if (alpha(i) > C) alpha(i) = C, alpha(j) = C - diff;
      } else {
        if (alpha(j) > C) alpha(j) = C, alpha(i) = C + diff;
      }
    } else {
      double quad = K(i, i) + K(j, j) - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad(i) - grad(j)) / quad;
      const double sum = alpha(i) + alpha(j);
      alpha(i) -= delta;
      alpha(j) += delta;
      if (sum > C) {
        if (alpha(i) > C) alpha(i) = C, alpha(j) = sum - C;
      } else {
        if (alpha(j) < 0.0) alpha(j) = 0.0, alpha(i) = sum;
      }
      if (sum > C) {
        if (alpha(j) > C) alpha(j) = C, alpha(i) = sum - C;
      } else {
        if (alpha(i) < 0.0) alpha(i) = 0.0, alpha(j) = sum;
      }
    }

    const double d_i = alpha(i) - old_i;
    const double d_j = alpha(j) - old_j;
    for (Eigen::Index t = 0; t < m; ++t) grad(t) += q(i, t) * d_i + q(j, t) * d_j;

    if (opt.record_objective) model.objective_trace.push_back(-0.5 * alpha.dot(grad - Eigen::VectorXd::Ones(m)));
  }

  // Bias from free vectors, or the midpoint of the feasible interval.
  double ub = kInf, lb = -kInf, sum_free = 0.0;
  long n_free = 0;
  for (Eigen::Index t = 0; t < m; ++t) {
    const double yg = double(y(t)) * grad(t);
    if (at_upper(t)) {
      if (y(t) == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (at_lower(t)) {
      if (y(t) == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  const double rho = n_free > 0 ? sum_free / double(n_free) : (ub + lb) / 2.0;

  model.alpha = alpha;
  model.dual_coefs = alpha.cwiseProduct(y.cast<double>());
  model.bias = -rho;
  for (Eigen::Index t = 0; t < m; ++t)
    if (alpha(t) > 1e-8) model.support_indices.push_back(t);
  model.iterations = iter;
  model.converged = converged;
  return model;
}

double decision_value(const SvmModel& model, const Eigen::Ref<const Eigen::VectorXd>& kernel_row) {
  if (kernel_row.size() != model.train_size())
    throw DimensionError("kernel row has " + std::to_string(kernel_row.size()) +
                         " entries, model was trained on " + std::to_string(model.train_size()));
  return model.dual_coefs.dot(kernel_row) + model.bias;
}

Eigen::VectorXd decision_values(const SvmModel& model,
                                const Eigen::Ref<const Eigen::MatrixXd>& kernel_rows) {
  Eigen::VectorXd out(kernel_rows.rows());
  for (Eigen::Index i = 0; i < kernel_rows.rows(); ++i)
    out(i) = decision_value(model, kernel_rows.row(i).transpose());
  return out;
}

Eigen::VectorXi predict(const SvmModel& model, const Eigen::Ref<const Eigen::MatrixXd>& kernel_rows) {
  const Eigen::VectorXd f = decision_values(model, kernel_rows);
  Eigen::VectorXi out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) out(i) = f(i) >= 0.0 ? 1 : -1;
  return out;
}

}  // namespace qmlbench
