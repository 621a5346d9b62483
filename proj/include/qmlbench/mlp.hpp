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

// Feed-forward classifier: ReLU hidden layers, single sigmoid output, trained
// with mini-batch gradient descent on binary cross-entropy.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qmlbench/errors.hpp"

namespace qmlbench {

struct MlpModel {
  std::vector<int> layer_sizes;          // input, hidden..., 1
  std::vector<Eigen::MatrixXd> weights;  // weights[l] is (size[l+1] x size[l])
  std::vector<Eigen::VectorXd> biases;

  int input_size() const { return layer_sizes.front(); }
  std::size_t num_layers() const { return weights.size(); }
  std::size_t parameter_count() const;
};

/// All-zero network with the given layer sizes. The last size must be 1.
MlpModel make_mlp(const std::vector<int>& layer_sizes);

/// He-normal weights, zero biases.
MlpModel init_mlp(const std::vector<int>& layer_sizes, std::uint64_t seed);

/// Pre-sigmoid output.
double mlp_logit(const MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

/// sigmoid(mlp_logit(x)).
double mlp_forward(const MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);

/// Class 1 when mlp_forward(x) >= 0.5.
Eigen::VectorXi mlp_predict(const MlpModel& model, const Eigen::Ref<const Eigen::MatrixXd>& rows);

/// Mean cross-entropy, evaluated from the logit.
double mlp_loss(const MlpModel& model, const Eigen::Ref<const Eigen::MatrixXd>& rows,
                const Eigen::Ref<const Eigen::VectorXi>& labels);

struct MlpGradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

/// Gradient of mlp_loss over the given rows.
MlpGradients mlp_gradients(const MlpModel& model, const Eigen::Ref<const Eigen::MatrixXd>& rows,
                           const Eigen::Ref<const Eigen::VectorXi>& labels);

/// d loss(x, y) / d x for a single sample.
Eigen::VectorXd mlp_input_gradient(const MlpModel& model, const Eigen::Ref<const Eigen::VectorXd>& x,
                                   int y);

struct MlpTrainResult {
  MlpModel model;
  std::vector<double> loss_trace;  // initial loss, then one entry per epoch
};

/// batch <= 0 or batch >= rows means full-batch (no shuffling).
MlpTrainResult mlp_train(const Eigen::Ref<const Eigen::MatrixXd>& rows,
                         const Eigen::Ref<const Eigen::VectorXi>& labels,
                         const std::vector<int>& layer_sizes, double lr, int epochs, int batch,
                         std::uint64_t seed);

}  // namespace qmlbench
