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

#include "qmlbench/bench.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <random>

#include "qmlbench/report.hpp"

#ifndef QMLBENCH_VERSION
#define QMLBENCH_VERSION "0.0.0"
#endif

namespace qmlbench {

double process_cpu_seconds() {
  timespec ts{};
  if (clock_gettime(CLOCK_PROCESS_CPUTIME_ID, &ts) == 0)
    return double(ts.tv_sec) + 1e-9 * double(ts.tv_nsec);
  return double(std::clock()) / CLOCKS_PER_SEC;
}

std::optional<std::uint64_t> peak_rss_bytes() {
  rusage usage{};
  if (getrusage(RUSAGE_SELF, &usage) != 0 || usage.ru_maxrss <= 0) return std::nullopt;
  // Linux reports kilobytes.
  return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024u;
}

std::string tool_version() { return QMLBENCH_VERSION; }

namespace {

std::uint64_t model_seed(const BenchConfig& config, const std::string& id) {
  const auto& ids = known_models();
  const auto pos = static_cast<std::uint64_t>(std::find(ids.begin(), ids.end(), id) - ids.begin());
  return derive_seed(config.seed, 100 + pos);
}

std::filesystem::path resolve(const BenchConfig& config, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !config.base_dir.empty()) path = config.base_dir / path;
  return path;
}

FeatureMapSpec feature_map_for(const BenchConfig& config, int n_qubits) {
  FeatureMapSpec fm = config.feature_map;
  fm.n_qubits = n_qubits;
  return fm;
}

std::string fraction_tag(double f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", f);
  return buf;
}

}  // namespace

Dataset resolve_dataset(const BenchConfig& config) {
  if (config.dataset.synthetic) {
    const SyntheticSpec& s = *config.dataset.synthetic;
    const std::uint64_t seed = derive_seed(config.seed, 1);
    if (s.kind == "blobs") return synth_blobs(s.m, s.d, s.separation, seed);
    const FeatureMapSpec fm = feature_map_for(config, s.n_qubits);
    Eigen::VectorXd theta(s.n_qubits * s.layers);
    if (!s.theta_star.empty()) {
      theta = Eigen::Map<const Eigen::VectorXd>(s.theta_star.data(),
                                                static_cast<Eigen::Index>(s.theta_star.size()));
    } else {
      std::mt19937_64 rng(derive_seed(config.seed, 2));
      std::uniform_real_distribution<double> u(-kPi, kPi);
      for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = u(rng);
    }
    return synth_adhoc(s.m, fm, theta, s.gap, seed);
  }

  std::string raw = config.dataset.path;
  if (raw.empty()) {
    if (const char* env = std::getenv("QMLBENCH_DATA")) raw = env;
  }
  if (raw.empty())
    throw IoError("no dataset configured: set dataset.path, dataset.synthetic or QMLBENCH_DATA");
  const auto path = resolve(config, raw);
  if (!std::filesystem::exists(path)) throw IoError("dataset file not found: " + path.string());
  if (!config.dataset.schema.empty())
    return load_with_schema(path, load_schema(resolve(config, config.dataset.schema)));
  return load_csv(path, "Diagnosis", {"PatientID", "DoctorInCharge"});
}

PreparedData prepare(const Split& split, int k) {
  PreparedData p;
  const Eigen::Index d = split.train.dim();
  if (k <= 0 || k >= d) {
    p.columns.resize(static_cast<std::size_t>(d));
    for (Eigen::Index j = 0; j < d; ++j) p.columns[static_cast<std::size_t>(j)] = j;
  } else {
    p.columns = top_k_columns(rank_features(split.train.features, split.train.labels), k);
  }
  const Dataset train = split.train.columns(p.columns);
  const Dataset test = split.test.columns(p.columns);
  p.column_names = train.feature_names;
  p.scaler = fit_scaler(train.features);
  p.train_x = scale_rows(p.scaler, train.features);
  p.test_x = scale_rows(p.scaler, test.features);
  p.train_y = train.labels;
  p.test_y = test.labels;
  return p;
}

TrainedModel train_model(const BenchConfig& config, const std::string& id, const Split& split) {
  const auto& ids = known_models();
  if (std::find(ids.begin(), ids.end(), id) == ids.end())
    throw ValidationError("unknown model id '" + id + "'");
  const std::uint64_t seed = model_seed(config, id);
  const bool quantum = is_quantum_model(id);

  Split working = split;
  if (quantum && working.train.size() > config.qml_train_cap)
    working.train = subsample(working.train, config.qml_train_cap, seed);

  const int k = quantum ? config.k : (config.classical_features == "all" ? 0 : config.k);
  TrainedModel t{id, MlpModel{}, prepare(working, k), {}, 0.0, 0, 0};
  const auto& x = t.data.train_x;
  const auto& y = t.data.train_y;
  const int n_features = static_cast<int>(x.cols());
  if (quantum) t.n_qubits = n_features;

  const double start = process_cpu_seconds();
  if (id == "svm" || id == "qsvm") {
    const SvmConfig& sc = id == "svm" ? config.svm : config.qsvm;
    const KernelMatrix kernel = id == "svm"
        ? rbf_kernel_matrix(x, sc.gamma > 0.0 ? sc.gamma : default_gamma(n_features))
        : kernel_matrix(x, feature_map_for(config, n_features));
    SvmOptions opt{sc.C, sc.tol, sc.max_passes, seed, false};
    KernelSvm svm{train_svm(kernel, to_signed_labels(y), opt), x};
    t.parameter_count = svm.model.support_indices.size() + 1;
    t.model = std::move(svm);
  } else if (id == "mlp") {
    std::vector<int> sizes{n_features};
    sizes.insert(sizes.end(), config.mlp.hidden.begin(), config.mlp.hidden.end());
    sizes.push_back(1);
    auto result = mlp_train(x, y, sizes, config.mlp.learning_rate, config.mlp.epochs,
                            config.mlp.batch, seed);
    t.parameter_count = result.model.parameter_count();
    t.loss_trace = std::move(result.loss_trace);
    t.model = std::move(result.model);
  } else {
    const FeatureMapSpec fm = feature_map_for(config, n_features);
    const VariationalConfig& vc = id == "vqc" ? config.vqc : config.qcnn;
    VqcModel init = id == "vqc" ? make_vqc(fm, vc.layers) : make_qcnn(fm);
    TrainConfig tc = vc.train;
    tc.seed = seed;
    auto result = train(std::move(init), x, y, tc);
    t.parameter_count = result.model.num_params();
    t.loss_trace = std::move(result.loss_trace);
    t.model = std::move(result.model);
  }
  t.train_cpu_seconds = process_cpu_seconds() - start;
  return t;
}

namespace {

void save_artifacts(const BenchConfig& config, const TrainedModel& t, double fraction) {
  const auto dir = resolve(config, config.output_dir) / "models";
  std::filesystem::create_directories(dir);
  const std::string stem = t.id + "_f" + fraction_tag(fraction);
  {
    std::ofstream out(dir / (stem + ".json"), std::ios::binary);
    if (!out) throw IoError("cannot write model file in " + dir.string());
    out << model_to_json(t).dump(2) << '\n';
  }
  if (!t.loss_trace.empty()) {
    std::ofstream out(dir / (stem + ".trace.csv"), std::ios::binary);
    if (!out) throw IoError("cannot write loss trace in " + dir.string());
    write_loss_trace_csv(out, t.loss_trace);
  }
}

BenchReport run_cells(const BenchConfig& config, const std::vector<std::string>& models) {
  const Dataset data = resolve_dataset(config);
  BenchReport report{tool_version(), config_hash(config), {}};

  std::vector<double> fractions = config.fractions;
  std::sort(fractions.begin(), fractions.end());
  fractions.erase(std::unique(fractions.begin(), fractions.end()), fractions.end());

  for (const std::string& id : models) {
    for (double fraction : fractions) {
      ReportRow row;
      row.model = id;
      row.train_fraction = fraction;
      row.seed = config.seed;
      row.config_hash = report.config_hash;
      if (is_quantum_model(id)) row.qml_train_cap = config.qml_train_cap;
      try {
        const Split s = split(data, fraction, config.seed, config.stratified);
        const TrainedModel t = train_model(config, id, s);
        const double start = process_cpu_seconds();
        const double acc = accuracy(t.model, t.data.test_x, t.data.test_y);
        row.predict_cpu_seconds = process_cpu_seconds() - start;
        row.test_accuracy = acc;
        row.train_cpu_seconds = t.train_cpu_seconds;
        row.n_qubits = t.n_qubits;
        row.n_features = static_cast<int>(t.data.train_x.cols());
        row.parameter_count = t.parameter_count;
        row.train_rows = static_cast<std::size_t>(t.data.train_x.rows());
        row.test_rows = static_cast<std::size_t>(t.data.test_x.rows());
        if (t.n_qubits > 0) row.statevector_bytes = Statevector::required_bytes(t.n_qubits);
        if (config.save_models) save_artifacts(config, t, fraction);
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      if (const auto rss = peak_rss_bytes()) {
        row.peak_memory_bytes = *rss;
      } else {
        row.peak_memory_bytes = row.statevector_bytes;
        row.memory_theoretical = true;
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

}  // namespace

BenchReport run_benchmark(const BenchConfig& config) { return run_cells(config, config.models); }

BenchReport sweep_fractions(const BenchConfig& config) {
  std::vector<std::string> models;
  for (const auto& id : config.models)
    if (!is_quantum_model(id) || config.sweep_include_qml) models.push_back(id);
  if (models.empty())
    throw ValidationError("sweep has no models to run (enable sweep.include_qml for quantum models)");
  return run_cells(config, models);
}

std::vector<AttackReport> run_attack(const BenchConfig& config, const std::string& id) {
  const Dataset data = resolve_dataset(config);
  const Split s = split(data, config.attack.fraction, config.seed, config.stratified);
  const TrainedModel t = train_model(config, id, s);
  const Eigen::Index n = std::min<Eigen::Index>(config.attack.max_samples, t.data.test_x.rows());
  const Eigen::MatrixXd xs = t.data.test_x.topRows(n);
  const Eigen::VectorXi ys = t.data.test_y.head(n);
  const std::uint64_t seed = derive_seed(config.seed, 7);
  auto reports = robustness_sweep(t.model, xs, ys, config.attack.epsilons, seed);
  if (std::holds_alternative<VqcModel>(t.model) && !config.attack.noise_levels.empty()) {
    auto noisy = noise_degradation(t.model, xs, ys, config.attack.noise_levels, config.attack.shots, seed);
    reports.insert(reports.end(), noisy.begin(), noisy.end());
  }
  return reports;
}

KernelMatrix dump_kernel(const BenchConfig& config, const std::string& kind) {
  if (kind != "quantum" && kind != "rbf")
    throw ValidationError("kernel kind must be 'quantum' or 'rbf'");
  const Dataset data = resolve_dataset(config);
  const Split s = split(data, config.kernel_dump.fraction, config.seed, config.stratified);
  const bool quantum = kind == "quantum";
  const PreparedData p =
      prepare(s, quantum ? config.k : (config.classical_features == "all" ? 0 : config.k));
  const Eigen::Index n = std::min<Eigen::Index>(config.kernel_dump.max_rows, p.train_x.rows());
  const Eigen::MatrixXd rows = p.train_x.topRows(n);
  if (quantum) return kernel_matrix(rows, feature_map_for(config, static_cast<int>(rows.cols())));
  const double gamma = config.svm.gamma > 0.0 ? config.svm.gamma : default_gamma(rows.cols());
  return rbf_kernel_matrix(rows, gamma);
}

}  // namespace qmlbench
