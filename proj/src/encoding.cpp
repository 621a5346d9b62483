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

#include "qmlbench/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qmlbench {

std::string_view to_string(FeatureMapKind kind) {
  return kind == FeatureMapKind::zz ? "zz" : "angle";
}

std::string_view to_string(Entanglement ent) {
  return ent == Entanglement::linear ? "linear" : "full";
}

FeatureMapKind parse_feature_map_kind(std::string_view s) {
  if (s == "zz") return FeatureMapKind::zz;
  if (s == "angle") return FeatureMapKind::angle;
  throw ParameterError("unknown feature map kind '" + std::string(s) + "'");
}

Entanglement parse_entanglement(std::string_view s) {
  if (s == "linear") return Entanglement::linear;
  if (s == "full") return Entanglement::full;
  throw ParameterError("unknown entanglement '" + std::string(s) + "'");
}

std::vector<std::pair<int, int>> FeatureMapSpec::pairs() const {
  std::vector<std::pair<int, int>> out;
  if (entanglement == Entanglement::linear) {
    for (int i = 0; i + 1 < n_qubits; ++i) out.emplace_back(i, i + 1);
  } else {
    for (int i = 0; i < n_qubits; ++i)
      for (int j = i + 1; j < n_qubits; ++j) out.emplace_back(i, j);
  }
  return out;
}

ScalingSpec fit_scaler(const Eigen::Ref<const Eigen::MatrixXd>& train_features) {
  if (train_features.rows() < 1 || train_features.cols() < 1)
    throw DataError("cannot fit a scaler on an empty matrix");
  return {train_features.colwise().minCoeff().transpose(),
          train_features.colwise().maxCoeff().transpose()};
}

Eigen::VectorXd scale(const ScalingSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() != spec.dim())
    throw DimensionError("scaler fitted on " + std::to_string(spec.dim()) + " features, got " +
                         std::to_string(x.size()));
  Eigen::VectorXd out(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (spec.is_constant(j)) {
      out(j) = kPi / 2;
      continue;
    }
    const double v = (x(j) - spec.min(j)) * (kPi / (spec.max(j) - spec.min(j)));
    out(j) = std::clamp(v, 0.0, kPi);
  }
  return out;
}

Eigen::MatrixXd scale_rows(const ScalingSpec& spec, const Eigen::Ref<const Eigen::MatrixXd>& rows) {
  Eigen::MatrixXd out(rows.rows(), rows.cols());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) out.row(i) = scale(spec, rows.row(i).transpose());
  return out;
}

FeatureRanking rank_features(const Eigen::Ref<const Eigen::MatrixXd>& features,
                             const Eigen::Ref<const Eigen::VectorXi>& labels) {
  if (features.rows() != labels.size())
    throw DimensionError("feature rows and label count differ");
  if (features.rows() < 2) throw DataError("feature ranking needs at least two rows");
  for (Eigen::Index i = 0; i < labels.size(); ++i)
    if (labels(i) != 0 && labels(i) != 1) throw DataError("labels must be 0 or 1");
  const Eigen::VectorXd y = labels.cast<double>();
  const double y_mean = y.mean();
  const Eigen::VectorXd yc = y.array() - y_mean;
  const double y_ss = yc.squaredNorm();
  if (y_ss == 0.0) throw DataError("feature ranking needs both classes present");

  FeatureRanking ranking;
  ranking.reserve(static_cast<std::size_t>(features.cols()));
  for (Eigen::Index j = 0; j < features.cols(); ++j) {
    const Eigen::VectorXd xc = features.col(j).array() - features.col(j).mean();
    const double x_ss = xc.squaredNorm();
    double r = 0.0;
    if (x_ss > 0.0) r = std::clamp(xc.dot(yc) / std::sqrt(x_ss * y_ss), -1.0, 1.0);
    ranking.push_back({j, r, std::abs(r)});
  }
  std::stable_sort(ranking.begin(), ranking.end(),
                   [](const FeatureScore& a, const FeatureScore& b) { return a.score > b.score; });
  return ranking;
}

std::vector<Eigen::Index> top_k_columns(const FeatureRanking& ranking, Eigen::Index k) {
  if (k < 1 || k > static_cast<Eigen::Index>(ranking.size()))
    throw ParameterError("k=" + std::to_string(k) + " must lie in [1, " +
                         std::to_string(ranking.size()) + "]");
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < k; ++i) cols.push_back(ranking[static_cast<std::size_t>(i)].index);
  std::sort(cols.begin(), cols.end());
  return cols;
}

Eigen::MatrixXd reduce(const Eigen::Ref<const Eigen::MatrixXd>& features,
                       const FeatureRanking& ranking, Eigen::Index k) {
  if (static_cast<Eigen::Index>(ranking.size()) != features.cols())
    throw DimensionError("ranking does not match the feature matrix");
  const auto cols = top_k_columns(ranking, k);
  Eigen::MatrixXd out(features.rows(), k);
  for (Eigen::Index c = 0; c < k; ++c) out.col(c) = features.col(cols[static_cast<std::size_t>(c)]);
  return out;
}

Circuit build_feature_map(const Eigen::Ref<const Eigen::VectorXd>& x, const FeatureMapSpec& spec) {
  if (spec.n_qubits < 1) throw ParameterError("feature map needs at least one qubit");
  if (spec.depth < 1) throw ParameterError("feature map depth must be >= 1");
  if (x.size() != spec.n_qubits)
    throw DimensionError("feature map expects " + std::to_string(spec.n_qubits) +
                         " features, got " + std::to_string(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x(i) >= -1e-9 && x(i) <= kPi + 1e-9))
      throw EncodingError("feature " + std::to_string(i) + " = " + std::to_string(x(i)) +
                          " is outside [0, pi]; scale inputs first");

  const int n = spec.n_qubits;
  const auto pairs = spec.pairs();
  Circuit c(n);
  for (int rep = 0; rep < spec.depth; ++rep) {
    for (int q = 0; q < n; ++q) c.add(Gate::h(q));
    for (int q = 0; q < n; ++q) c.add(Gate::rz(q, 2.0 * x(q)));
    if (spec.kind != FeatureMapKind::zz) continue;
    for (auto [i, j] : pairs) {
      c.add(Gate::cx(i, j));
      c.add(Gate::rz(j, 2.0 * (kPi - x(i)) * (kPi - x(j))));
      c.add(Gate::cx(i, j));
    }
  }
  return c;
}

Statevector encode_state(const Eigen::Ref<const Eigen::VectorXd>& x, const FeatureMapSpec& spec) {
  return apply_circuit(Statevector(spec.n_qubits), build_feature_map(x, spec));
}

}  // namespace qmlbench
