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

#include "qmlbench/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "qmlbench/errors.hpp"

namespace qmlbench {

namespace {

double sigmoid(double z) {
  return z >= 0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z));
}

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

void check_input(const MlpModel& model, Eigen::Index n) {
  if (n != model.input_size())
    throw DimensionError("network expects " + std::to_string(model.input_size()) +
                         " inputs, got " + std::to_string(n));
}

void check_labels(const Eigen::Ref<const Eigen::MatrixXd>& rows,
                  const Eigen::Ref<const Eigen::VectorXi>& labels) {
  if (rows.rows() != labels.size()) throw DimensionError("row and label counts differ");
  if (rows.rows() == 0) throw DataError("empty dataset");
  for (Eigen::Index i = 0; i < labels.size(); ++i)
    if (labels(i) != 0 && labels(i) != 1) throw DataError("labels must be 0 or 1");
}

struct Tape {
  std::vector<Eigen::VectorXd> pre;   // pre-activations per layer
  std::vector<Eigen::VectorXd> post;  // post[0] = input
};

Tape run(const MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  Tape t;
  t.post.emplace_back(x);
  for (std::size_t l = 0; l < model.num_layers(); ++l) {
    t.pre.push_back(model.weights[l] * t.post.back() + model.biases[l]);
    if (l + 1 < model.num_layers())
      t.post.push_back(t.pre.back().cwiseMax(0.0));
    else
      t.post.push_back(t.pre.back());
  }
  return t;
}

// Backpropagates d loss / d logit through the tape. Accumulates parameter
// gradients when `grads` is non-null and returns d loss / d input.
Eigen::VectorXd backprop(const MlpModel& model, const Tape& t, double dlogit, MlpGradients* grads) {
  Eigen::VectorXd delta = Eigen::VectorXd::Constant(1, dlogit);
  for (std::size_t l = model.num_layers(); l-- > 0;) {
    if (grads) {
      grads->weights[l].noalias() += delta * t.post[l].transpose();
      grads->biases[l] += delta;
    }
    Eigen::VectorXd up = model.weights[l].transpose() * delta;
    if (l > 0) up = up.cwiseProduct((t.pre[l - 1].array() > 0.0).cast<double>().matrix());
    delta = std::move(up);
  }
  return delta;
}

MlpGradients zero_gradients(const MlpModel& model) {
  MlpGradients g;
  for (std::size_t l = 0; l < model.num_layers(); ++l) {
    g.weights.push_back(Eigen::MatrixXd::Zero(model.weights[l].rows(), model.weights[l].cols()));
    g.biases.push_back(Eigen::VectorXd::Zero(model.biases[l].size()));
  }
  return g;
}

}  // namespace

std::size_t MlpModel::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights.size(); ++l)
    n += static_cast<std::size_t>(weights[l].size() + biases[l].size());
  return n;
}

MlpModel make_mlp(const std::vector<int>& layer_sizes) {
  if (layer_sizes.size() < 2) throw ParameterError("an MLP needs input and output sizes");
  if (layer_sizes.back() != 1) throw ParameterError("MLP output size must be 1");
  for (int s : layer_sizes)
    if (s < 1) throw ParameterError("layer sizes must be positive");
  MlpModel m;
  m.layer_sizes = layer_sizes;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    m.weights.push_back(Eigen::MatrixXd::Zero(layer_sizes[l + 1], layer_sizes[l]));
    m.biases.push_back(Eigen::VectorXd::Zero(layer_sizes[l + 1]));
  }
  return m;
}

MlpModel init_mlp(const std::vector<int>& layer_sizes, std::uint64_t seed) {
  MlpModel m = make_mlp(layer_sizes);
  std::mt19937_64 rng(seed);
  for (auto& w : m.weights) {
    std::normal_distribution<double> he(0.0, std::sqrt(2.0 / double(w.cols())));
    for (Eigen::Index j = 0; j < w.cols(); ++j)
      for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = he(rng);
  }
  return m;
}

double mlp_logit(const MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  check_input(model, x.size());
  return run(model, x).post.back()(0);
}

double mlp_forward(const MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
  return sigmoid(mlp_logit(model, x));
}

Eigen::VectorXi mlp_predict(const MlpModel& model, const Eigen::Ref<const Eigen::MatrixXd>& rows) {
  Eigen::VectorXi out(rows.rows());
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
    out(i) = mlp_forward(model, rows.row(i).transpose()) >= 0.5 ? 1 : 0;
  return out;
}

double mlp_loss(const MlpModel& model, const Eigen::Ref<const Eigen::MatrixXd>& rows,
                const Eigen::Ref<const Eigen::VectorXi>& labels) {
  check_labels(rows, labels);
  double total = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const double z = mlp_logit(model, rows.row(i).transpose());
    total += labels(i) == 1 ? softplus(-z) : softplus(z);
  }
  return total / double(rows.rows());
}

MlpGradients mlp_gradients(const MlpModel& model, const Eigen::Ref<const Eigen::MatrixXd>& rows,
                           const Eigen::Ref<const Eigen::VectorXi>& labels) {
  check_labels(rows, labels);
  check_input(model, rows.cols());
  MlpGradients g = zero_gradients(model);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const Tape t = run(model, rows.row(i).transpose());
    backprop(model, t, sigmoid(t.post.back()(0)) - double(labels(i)), &g);
  }
  const double inv = 1.0 / double(rows.rows());
  for (std::size_t l = 0; l < model.num_layers(); ++l) {
    g.weights[l] *= inv;
    g.biases[l] *= inv;
  }
  return g;
}

Eigen::VectorXd mlp_input_gradient(const MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x,
                                   int y) {
  check_input(model, x.size());
  if (y != 0 && y != 1) throw DataError("label must be 0 or 1");
  const Tape t = run(model, x);
  return backprop(model, t, sigmoid(t.post.back()(0)) - double(y), nullptr);
}

MlpTrainResult mlp_train(const Eigen::Ref<const Eigen::MatrixXd>& rows,
                         const Eigen::Ref<const Eigen::VectorXi>& labels,
                         const std::vector<int>& layer_sizes, double lr, int epochs, int batch,
                         std::uint64_t seed) {
  check_labels(rows, labels);
  if (labels.minCoeff() == labels.maxCoeff()) throw DataError("MLP training needs both classes");
  if (!(lr > 0.0)) throw ParameterError("learning rate must be > 0");
  if (epochs < 0) throw ParameterError("epochs must be >= 0");
  if (layer_sizes.empty() || layer_sizes.front() != rows.cols())
    throw DimensionError("first layer size must equal the feature count");

  MlpTrainResult result{init_mlp(layer_sizes, seed), {}};
  MlpModel& model = result.model;
  result.loss_trace.push_back(mlp_loss(model, rows, labels));

  const Eigen::Index m = rows.rows();
  const Eigen::Index bs = (batch <= 0 || batch >= m) ? m : batch;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::mt19937_64 rng(seed ^ 0x5deece66dULL);

  for (int epoch = 1; epoch <= epochs; ++epoch) {
    if (bs < m) std::shuffle(order.begin(), order.end(), rng);
    for (Eigen::Index start = 0; start < m; start += bs) {
      const Eigen::Index n = std::min(bs, m - start);
      Eigen::MatrixXd xb(n, rows.cols());
      Eigen::VectorXi yb(n);
      for (Eigen::Index k = 0; k < n; ++k) {
        xb.row(k) = rows.row(order[static_cast<std::size_t>(start + k)]);
        yb(k) = labels(order[static_cast<std::size_t>(start + k)]);
      }
      const MlpGradients g = mlp_gradients(model, xb, yb);
      for (std::size_t l = 0; l < model.num_layers(); ++l) {
        model.weights[l] -= lr * g.weights[l];
        model.biases[l] -= lr * g.biases[l];
      }
    }
    const double loss = mlp_loss(model, rows, labels);
    if (!std::isfinite(loss))
      throw TrainingError("MLP loss became non-finite at epoch " + std::to_string(epoch));
    result.loss_trace.push_back(loss);
  }
  return result;
}

}  // namespace qmlbench
