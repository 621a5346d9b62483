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

// Benchmark configuration: a versioned JSON document. Unknown keys are
// rejected and every problem is reported at once.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmlbench/encoding.hpp"
#include "qmlbench/varmodels.hpp"

namespace qmlbench {

inline constexpr int kConfigSchemaVersion = 1;

struct SyntheticSpec {
  std::string kind = "blobs";  // "blobs" or "adhoc"
  int m = 200;
  int d = 8;                // blobs
  double separation = 2.0;  // blobs
  int n_qubits = 2;         // adhoc
  int layers = 2;           // adhoc teacher layers
  double gap = 0.2;         // adhoc
  std::vector<double> theta_star;  // adhoc; drawn from the seed when empty
};

struct DatasetConfig {
  std::string path;    // empty: QMLBENCH_DATA
  std::string schema;  // optional schema descriptor
  std::optional<SyntheticSpec> synthetic;
};

struct SvmConfig {
  double C = 1.0;
  double tol = 1e-3;
  double gamma = 0.0;  // 0: 1/d
  long max_passes = 100000;
};

struct MlpConfig {
  std::vector<int> hidden{64};
  double learning_rate = 0.05;
  int epochs = 500;
  int batch = 0;  // 0: full batch
};

struct VariationalConfig {
  int layers = 2;  // vqc only
  TrainConfig train;
};

struct AttackConfig {
  double fraction = 0.7;
  std::vector<double> epsilons{0.0, 0.05, 0.1, 0.2, 0.3};
  std::vector<double> noise_levels{0.0, 0.01, 0.05, 0.1, 1.0};
  int shots = 200;
  int max_samples = 100;
};

struct KernelDumpConfig {
  std::string kind = "quantum";
  int max_rows = 50;
  double fraction = 0.5;
};

struct BenchConfig {
  int schema_version = kConfigSchemaVersion;
  std::uint64_t seed = 7;
  std::string output_dir = "qmlbench-out";
  DatasetConfig dataset;
  int k = 8;
  std::string classical_features = "all";  // "all" or "reduced"
  FeatureMapSpec feature_map{8, 2, Entanglement::linear, FeatureMapKind::zz};
  std::vector<std::string> models{"svm", "mlp"};
  std::vector<double> fractions{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  bool stratified = true;
  SvmConfig svm;
  SvmConfig qsvm;
  MlpConfig mlp;
  VariationalConfig vqc;
  VariationalConfig qcnn;
  int qml_train_cap = 400;
  bool sweep_include_qml = false;
  bool save_models = true;
  AttackConfig attack;
  KernelDumpConfig kernel_dump;

  /// Directory of the config file; relative paths resolve against it.
  std::filesystem::path base_dir;
};

inline const std::vector<std::string>& known_models() {
  static const std::vector<std::string> ids{"svm", "mlp", "qsvm", "vqc", "qcnn"};
  return ids;
}

inline bool is_quantum_model(const std::string& id) {
  return id == "qsvm" || id == "vqc" || id == "qcnn";
}

/// Throws ValidationError listing every problem found.
BenchConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
BenchConfig load_config(const std::filesystem::path& path);

/// Canonical JSON of the effective configuration (defaults filled in).
nlohmann::json to_json(const BenchConfig& config);

/// 16-hex-digit FNV-1a hash of the canonical JSON.
std::string config_hash(const BenchConfig& config);

/// Replaces every seed in the configuration.
void override_seed(BenchConfig& config, std::uint64_t seed);

}  // namespace qmlbench
