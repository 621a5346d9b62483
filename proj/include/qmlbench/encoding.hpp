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

// Classical preprocessing and quantum feature maps.

#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qmlbench/simcore.hpp"

namespace qmlbench {

inline constexpr double kPi = std::numbers::pi;

enum class FeatureMapKind { zz, angle };
enum class Entanglement { linear, full };

std::string_view to_string(FeatureMapKind kind);
std::string_view to_string(Entanglement ent);
FeatureMapKind parse_feature_map_kind(std::string_view s);
Entanglement parse_entanglement(std::string_view s);

struct FeatureMapSpec {
  int n_qubits = 1;
  int depth = 2;
  Entanglement entanglement = Entanglement::linear;
  FeatureMapKind kind = FeatureMapKind::zz;

  /// Entangling pairs (i, j), i < j, in application order.
  std::vector<std::pair<int, int>> pairs() const;

  friend bool operator==(const FeatureMapSpec&, const FeatureMapSpec&) = default;
};

/// Per-feature affine map onto [0, pi] learned from training rows.
struct ScalingSpec {
  Eigen::VectorXd min;
  Eigen::VectorXd max;

  Eigen::Index dim() const { return min.size(); }
  bool is_constant(Eigen::Index j) const { return min(j) == max(j); }
};

ScalingSpec fit_scaler(const Eigen::Ref<const Eigen::MatrixXd>& train_features);

/// Maps each component to [0, pi]; values outside the training range clamp,
/// constant features map to pi/2.
Eigen::VectorXd scale(const ScalingSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x);
Eigen::MatrixXd scale_rows(const ScalingSpec& spec, const Eigen::Ref<const Eigen::MatrixXd>& rows);

struct FeatureScore {
  Eigen::Index index = 0;
  double correlation = 0.0;  // signed point-biserial correlation
  double score = 0.0;        // |correlation|
};
using FeatureRanking = std::vector<FeatureScore>;

/// Features by decreasing |point-biserial correlation| with a {0,1} label;
/// ties go to the lower column index.
FeatureRanking rank_features(const Eigen::Ref<const Eigen::MatrixXd>& features,
                             const Eigen::Ref<const Eigen::VectorXi>& labels);

/// Column indices of the top-k ranked features, ascending.
std::vector<Eigen::Index> top_k_columns(const FeatureRanking& ranking, Eigen::Index k);

/// Keeps the k top-ranked columns in their original order.
Eigen::MatrixXd reduce(const Eigen::Ref<const Eigen::MatrixXd>& features,
                       const FeatureRanking& ranking, Eigen::Index k);

/// Fully bound circuit preparing |Phi(x)> from |0...0>.
///
/// angle: depth x [H on all; RZ(2 x_i) on i].
/// zz:    depth x [H on all; RZ(2 x_i) on i;
///                 for each pair (i, j): CX(i,j) RZ_j(2 (pi - x_i)(pi - x_j)) CX(i,j)].
Circuit build_feature_map(const Eigen::Ref<const Eigen::VectorXd>& x, const FeatureMapSpec& spec);

/// State |Phi(x)> = feature_map(x)|0...0>.
Statevector encode_state(const Eigen::Ref<const Eigen::VectorXd>& x, const FeatureMapSpec& spec);

}  // namespace qmlbench
