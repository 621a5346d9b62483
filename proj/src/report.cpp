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

#include "qmlbench/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>

#include "qmlbench/errors.hpp"

namespace qmlbench {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

json vector_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json matrix_json(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
  return out;
}

json feature_map_json(const FeatureMapSpec& fm) {
  return {{"kind", std::string(to_string(fm.kind))},
          {"n_qubits", fm.n_qubits},
          {"depth", fm.depth},
          {"entanglement", std::string(to_string(fm.entanglement))}};
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw IoError("cannot create output directory " + dir.string());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

json to_json(const ReportRow& row) {
  json j{{"model", row.model},
         {"train_fraction", row.train_fraction},
         {"test_accuracy", row.test_accuracy ? json(*row.test_accuracy) : json(nullptr)},
         {"train_cpu_seconds", row.train_cpu_seconds},
         {"predict_cpu_seconds", row.predict_cpu_seconds},
         {"peak_memory_bytes", row.peak_memory_bytes},
         {"memory_theoretical", row.memory_theoretical},
         {"statevector_bytes", row.statevector_bytes},
         {"n_qubits", row.n_qubits},
         {"n_features", row.n_features},
         {"parameter_count", row.parameter_count},
         {"train_rows", row.train_rows},
         {"test_rows", row.test_rows},
         {"qml_train_cap", row.qml_train_cap},
         {"seed", row.seed},
         {"config_hash", row.config_hash}};
  if (!row.error.empty()) j["error"] = row.error;
  return j;
}

json to_json(const BenchReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) rows.push_back(to_json(r));
  return {{"tool_version", report.tool_version}, {"config_hash", report.config_hash}, {"rows", rows}};
}

json to_json(const AttackReport& r) {
  return {{"model", r.model_id},
          {"attack", r.attack},
          {"strength", r.strength},
          {"clean_accuracy", r.clean_accuracy},
          {"attacked_accuracy", r.attacked_accuracy},
          {"perturbation_norms", r.perturbation_norms},
          {"seed", r.seed},
          {"samples", r.samples}};
}

void write_report_csv(std::ostream& os, const BenchReport& report) {
  os << "model,train_fraction,test_accuracy,train_cpu_seconds,predict_cpu_seconds,"
        "peak_memory_bytes,memory_theoretical,statevector_bytes,n_qubits,n_features,"
        "parameter_count,train_rows,test_rows,qml_train_cap,seed,config_hash,error\n";
  for (const auto& r : report.rows) {
    os << csv_field(r.model) << ',' << format_double(r.train_fraction) << ','
       << (r.test_accuracy ? format_double(*r.test_accuracy) : std::string()) << ','
       << format_double(r.train_cpu_seconds) << ',' << format_double(r.predict_cpu_seconds) << ','
       << r.peak_memory_bytes << ',' << (r.memory_theoretical ? "true" : "false") << ','
       << r.statevector_bytes << ',' << r.n_qubits << ',' << r.n_features << ','
       << r.parameter_count << ',' << r.train_rows << ',' << r.test_rows << ','
       << r.qml_train_cap << ',' << r.seed << ',' << r.config_hash << ',' << csv_field(r.error)
       << '\n';
  }
}

void write_plotdata(std::ostream& os, const BenchReport& report) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  for (const auto& r : report.rows) {
    if (!r.test_accuracy) continue;
    auto [it, inserted] = series.try_emplace(r.model);
    if (inserted) order.push_back(r.model);
    it->second.emplace_back(r.train_fraction, *r.test_accuracy);
  }
  bool first = true;
  for (const auto& id : order) {
    auto& points = series[id];
    std::stable_sort(points.begin(), points.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    if (!first) os << "\n\n";
    first = false;
    os << "# model " << id << '\n';
    for (const auto& [f, acc] : points) os << format_double(f) << ' ' << format_double(acc) << '\n';
  }
}

void write_attack_csv(std::ostream& os, const std::vector<AttackReport>& reports) {
  os << "model,attack,strength,clean_accuracy,attacked_accuracy,mean_perturbation,seed,samples\n";
  for (const auto& r : reports) {
    double mean = 0.0;
    for (double v : r.perturbation_norms) mean += v;
    if (!r.perturbation_norms.empty()) mean /= double(r.perturbation_norms.size());
    os << r.model_id << ',' << r.attack << ',' << format_double(r.strength) << ','
       << format_double(r.clean_accuracy) << ',' << format_double(r.attacked_accuracy) << ','
       << format_double(mean) << ',' << r.seed << ',' << r.samples << '\n';
  }
}

void write_loss_trace_csv(std::ostream& os, const std::vector<double>& trace) {
  os << "iteration,loss\n";
  for (std::size_t i = 0; i < trace.size(); ++i) os << i << ',' << format_double(trace[i]) << '\n';
}

json model_to_json(const TrainedModel& t) {
  json j{{"model", t.id},
         {"tool_version", tool_version()},
         {"columns", t.data.column_names},
         {"scaler", {{"min", vector_json(t.data.scaler.min)}, {"max", vector_json(t.data.scaler.max)}}}};
  if (const auto* m = std::get_if<MlpModel>(&t.model)) {
    json layers = json::array();
    for (std::size_t l = 0; l < m->weights.size(); ++l)
      layers.push_back({{"weights", matrix_json(m->weights[l])}, {"bias", vector_json(m->biases[l])}});
    j["layer_sizes"] = m->layer_sizes;
    j["layers"] = layers;
  } else if (const auto* v = std::get_if<VqcModel>(&t.model)) {
    j["feature_map"] = feature_map_json(v->feature_map);
    if (v->kind == ModelKind::vqc) j["layers"] = v->layers;
    j["readout_qubit"] = v->readout_qubit;
    j["theta"] = vector_json(v->theta);
  } else {
    const auto& k = std::get<KernelSvm>(t.model);
    if (k.model.feature_map) j["feature_map"] = feature_map_json(*k.model.feature_map);
    else j["gamma"] = k.model.gamma;
    j["C"] = k.model.C;
    j["bias"] = k.model.bias;
    json sv = json::array();
    for (Eigen::Index i : k.model.support_indices)
      sv.push_back({{"coef", k.model.dual_coefs(i)}, {"x", vector_json(k.train_rows.row(i).transpose())}});
    j["support_vectors"] = sv;
    j["iterations"] = k.model.iterations;
    j["converged"] = k.model.converged;
  }
  return j;
}

EmittedFiles emit_report(const BenchReport& report, const std::filesystem::path& dir,
                         const std::string& stem) {
  ensure_dir(dir);
  EmittedFiles files{dir / (stem + ".json"), dir / (stem + ".csv"), dir / (stem + ".plotdata")};
  {
    auto out = open_output(files.json);
    out << to_json(report).dump(2) << '\n';
  }
  {
    auto out = open_output(files.csv);
    write_report_csv(out, report);
  }
  {
    auto out = open_output(files.plotdata);
    write_plotdata(out, report);
  }
  return files;
}

void emit_attack_report(const std::vector<AttackReport>& reports, const std::string& config_hash,
                        const std::filesystem::path& dir, const std::string& stem) {
  ensure_dir(dir);
  json rows = json::array();
  for (const auto& r : reports) rows.push_back(to_json(r));
  {
    auto out = open_output(dir / (stem + ".json"));
    out << json{{"tool_version", tool_version()}, {"config_hash", config_hash}, {"reports", rows}}.dump(2)
        << '\n';
  }
  auto out = open_output(dir / (stem + ".csv"));
  write_attack_csv(out, reports);
}

}  // namespace qmlbench
