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

// End-to-end benchmark: split, preprocess, train, evaluate and time each
// (model, training fraction) cell.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmlbench/attacks.hpp"
#include "qmlbench/config.hpp"
#include "qmlbench/dataio.hpp"

namespace qmlbench {

/// Process CPU time in seconds (all threads of this process).
double process_cpu_seconds();

/// Peak resident set size in bytes, or nullopt when the platform does not
/// expose it.
std::optional<std::uint64_t> peak_rss_bytes();

struct ReportRow {
  std::string model;
  double train_fraction = 0.0;
  std::optional<double> test_accuracy;  // empty when the cell failed
  double train_cpu_seconds = 0.0;
  double predict_cpu_seconds = 0.0;
  std::uint64_t peak_memory_bytes = 0;
  bool memory_theoretical = false;
  std::uint64_t statevector_bytes = 0;  // 16 * 2^n for quantum models
  int n_qubits = 0;
  int n_features = 0;
  std::size_t parameter_count = 0;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  int qml_train_cap = 0;  // 0 for classical models
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string error;
};

struct BenchReport {
  std::string tool_version;
  std::string config_hash;
  std::vector<ReportRow> rows;
};

std::string tool_version();

/// Synthetic data when configured, otherwise the dataset file (config path,
/// then QMLBENCH_DATA). Throws IoError naming the missing path.
Dataset resolve_dataset(const BenchConfig& config);

/// Train/test matrices after feature selection and scaling. Ranking and
/// scaler statistics come from the training rows only.
struct PreparedData {
  Eigen::MatrixXd train_x;
  Eigen::VectorXi train_y;
  Eigen::MatrixXd test_x;
  Eigen::VectorXi test_y;
  std::vector<Eigen::Index> columns;
  std::vector<std::string> column_names;
  ScalingSpec scaler;
};

/// `k` <= 0 keeps every column.
PreparedData prepare(const Split& split, int k);

struct TrainedModel {
  std::string id;
  AnyModel model;
  PreparedData data;
  std::vector<double> loss_trace;
  double train_cpu_seconds = 0.0;
  int n_qubits = 0;
  std::size_t parameter_count = 0;
};

/// Preprocesses `split` for model `id` and trains it. Quantum models train on
/// at most config.qml_train_cap rows.
TrainedModel train_model(const BenchConfig& config, const std::string& id, const Split& split);

/// All configured models x all configured fractions, ordered by
/// (model order in config, fraction).
BenchReport run_benchmark(const BenchConfig& config);

/// Classical models over every configured fraction; quantum models only when
/// sweep.include_qml is set.
BenchReport sweep_fractions(const BenchConfig& config);

/// FGSM sweep (all models) plus noise degradation (vqc/qcnn) on the held-out
/// rows of the attack split.
std::vector<AttackReport> run_attack(const BenchConfig& config, const std::string& id);

/// Gram matrix over up to kernel_dump.max_rows scaled training rows.
KernelMatrix dump_kernel(const BenchConfig& config, const std::string& kind);

}  // namespace qmlbench
