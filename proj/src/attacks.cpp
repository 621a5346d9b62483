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

#include "qmlbench/attacks.hpp"

#include <algorithm>
#include <cmath>

namespace qmlbench {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Eigen::MatrixXd kernel_row(const KernelSvm& svm, const Eigen::Ref<const Eigen::VectorXd>& x) {
  const Eigen::MatrixXd query = x.transpose();
  if (svm.model.kernel_kind == KernelKind::rbf)
    return rbf_cross_kernel(query, svm.train_rows, svm.model.gamma);
  if (!svm.model.feature_map) throw ModelKindError("quantum SVM is missing its feature map");
  return cross_kernel(query, svm.train_rows, *svm.model.feature_map);
}

// Finite-difference gradient of `loss` inside the [0, pi] box.
template <typename Loss>
Eigen::VectorXd box_gradient(const Eigen::Ref<const Eigen::VectorXd>& x, double h, Loss&& loss) {
  Eigen::VectorXd g(x.size());
  Eigen::VectorXd probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double lo = x(i) - h, hi = x(i) + h;
    double up = x(i), down = x(i);
    if (lo >= 0.0 && hi <= kPi) {
      up = hi, down = lo;
    } else if (lo < 0.0) {
      up = hi;
    } else {
      down = lo;
    }
    probe(i) = up;
    const double f_up = loss(probe);
    probe(i) = down;
    const double f_down = loss(probe);
    probe(i) = x(i);
    g(i) = (f_up - f_down) / (up - down);
  }
  return g;
}

void check_scaled(const Eigen::Ref<const Eigen::VectorXd>& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x(i) >= 0.0 && x(i) <= kPi))
      throw ParameterError("attack input component " + std::to_string(i) +
                           " is outside the scaled range [0, pi]");
}

}  // namespace

double decision_value(const KernelSvm& svm, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return decision_value(svm.model, kernel_row(svm, x).row(0).transpose());
}

std::string model_id(const AnyModel& model) {
  return std::visit(overloaded{
                        [](const MlpModel&) { return std::string("mlp"); },
                        [](const VqcModel& m) { return std::string(to_string(m.kind)); },
                        [](const KernelSvm& s) {
                          return std::string(s.model.kernel_kind == KernelKind::rbf ? "svm" : "qsvm");
                        },
                    },
                    model);
}

int predict_label(const AnyModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return std::visit(overloaded{
                        [&](const MlpModel& m) { return mlp_forward(m, x) >= 0.5 ? 1 : 0; },
                        [&](const VqcModel& m) { return forward(m, x) >= 0.5 ? 1 : 0; },
                        [&](const KernelSvm& s) { return decision_value(s, x) >= 0.0 ? 1 : 0; },
                    },
                    model);
}

double accuracy(const AnyModel& model, const Eigen::Ref<const Eigen::MatrixXd>& rows,
                const Eigen::Ref<const Eigen::VectorXi>& labels) {
  if (rows.rows() == 0) throw DataError("accuracy of an empty set");
  if (rows.rows() != labels.size()) throw DimensionError("row and label counts differ");
  Eigen::Index hits = 0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    hits += predict_label(model, rows.row(i).transpose()) == labels(i);
  return double(hits) / double(rows.rows());
}

Eigen::VectorXd input_gradient(const MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x, int y) {
  return mlp_input_gradient(model, x, y);
}

Eigen::VectorXd input_gradient(const VqcModel& model, const Eigen::Ref<const Eigen::VectorXd>& x, int y,
                               double h) {
  if (x.size() != model.feature_map.n_qubits)
    throw DimensionError("input has " + std::to_string(x.size()) + " features, model expects " +
                         std::to_string(model.feature_map.n_qubits));
  return box_gradient(x, h, [&](const Eigen::VectorXd& p) { return bce(forward(model, p), y); });
}

Eigen::VectorXd input_gradient(const KernelSvm& model, const Eigen::Ref<const Eigen::VectorXd>& x, int y,
                               double h) {
  if (x.size() != model.train_rows.cols())
    throw DimensionError("input has " + std::to_string(x.size()) + " features, model expects " +
                         std::to_string(model.train_rows.cols()));
  const double sign = y == 1 ? 1.0 : -1.0;
  return box_gradient(x, h, [&](const Eigen::VectorXd& p) { return -sign * decision_value(model, p); });
}

Eigen::VectorXd input_gradient(const AnyModel& model, const Eigen::Ref<const Eigen::VectorXd>& x, int y) {
  return std::visit([&](const auto& m) -> Eigen::VectorXd { return input_gradient(m, x, y); }, model);
}

Eigen::VectorXd fgsm(const AnyModel& model, const Eigen::Ref<const Eigen::VectorXd>& x, int y,
                     double epsilon) {
  if (!(epsilon >= 0.0)) throw ParameterError("epsilon must be >= 0");
  check_scaled(x);
  if (epsilon == 0.0) return x;
  const Eigen::VectorXd g = input_gradient(model, x, y);
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double s = g(i) > 0.0 ? 1.0 : (g(i) < 0.0 ? -1.0 : 0.0);
    double v = std::clamp(x(i) + epsilon * s, 0.0, kPi);
    while (std::abs(v - x(i)) > epsilon) v = std::nextafter(v, x(i));
    out(i) = v;
  }
  return out;
}

std::vector<AttackReport> robustness_sweep(const AnyModel& model,
                                           const Eigen::Ref<const Eigen::MatrixXd>& rows,
                                           const Eigen::Ref<const Eigen::VectorXi>& labels,
                                           const std::vector<double>& epsilons, std::uint64_t seed) {
  if (rows.rows() == 0) throw DataError("robustness sweep needs a nonempty test set");
  const double clean = accuracy(model, rows, labels);
  std::vector<AttackReport> reports;
  for (double eps : epsilons) {
    AttackReport r{model_id(model), "fgsm", eps, clean, 0.0, {}, seed,
                   static_cast<std::size_t>(rows.rows())};
    Eigen::Index hits = 0;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      const Eigen::VectorXd x = rows.row(i).transpose();
      const Eigen::VectorXd adv = fgsm(model, x, labels(i), eps);
      r.perturbation_norms.push_back((adv - x).cwiseAbs().maxCoeff());
      hits += predict_label(model, adv) == labels(i);
    }
    r.attacked_accuracy = double(hits) / double(rows.rows());
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<AttackReport> noise_degradation(const AnyModel& model,
                                            const Eigen::Ref<const Eigen::MatrixXd>& rows,
                                            const Eigen::Ref<const Eigen::VectorXi>& labels,
                                            const std::vector<double>& noise_levels, int shots,
                                            std::uint64_t seed) {
  const auto* vqc = std::get_if<VqcModel>(&model);
  if (!vqc) throw ModelKindError("noise degradation needs a VQC or QCNN model, got " + model_id(model));
  if (shots < 100) throw ParameterError("noise degradation needs shots >= 100");
  if (rows.rows() == 0) throw DataError("noise degradation needs a nonempty test set");
  const double clean = accuracy(model, rows, labels);

  std::vector<AttackReport> reports;
  for (std::size_t level = 0; level < noise_levels.size(); ++level) {
    const double p = noise_levels[level];
    AttackReport r{model_id(model), "noise", p, clean, 0.0, {}, seed,
                   static_cast<std::size_t>(rows.rows())};
    Eigen::Index hits = 0;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      const Circuit circuit = full_circuit(*vqc, rows.row(i).transpose());
      const auto sample_seed =
          derive_seed(seed, level * static_cast<std::uint64_t>(rows.rows()) + static_cast<std::uint64_t>(i));
      const double z = noisy_expectation_z(circuit, vqc->theta, vqc->readout_qubit, p, shots, sample_seed);
      hits += ((0.5 * (1.0 + z)) >= 0.5 ? 1 : 0) == labels(i);
    }
    r.attacked_accuracy = double(hits) / double(rows.rows());
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace qmlbench
