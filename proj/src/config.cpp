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

#include "qmlbench/config.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace qmlbench {

using nlohmann::json;

namespace {

class Reader {
 public:
  explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

  bool object(const json& node, const std::string& where) {
    if (node.is_object()) return true;
    errors_.push_back(where + ": expected an object");
    return false;
  }

  void keys(const json& node, const std::string& where, std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : node.items()) {
      if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; }))
        errors_.push_back(where + ": unknown key '" + key + "'");
    }
  }

  template <typename T>
  void get(const json& node, const char* key, T& out, const std::string& where) {
    if (!node.contains(key)) return;
    try {
      out = node.at(key).get<T>();
    } catch (const json::exception&) {
      errors_.push_back(where + "." + key + ": wrong type (" + node.at(key).dump() + ")");
    }
  }

  void require(bool ok, const std::string& message) {
    if (!ok) errors_.push_back(message);
  }

 private:
  std::vector<std::string>& errors_;
};

void read_train(Reader& r, const json& node, const std::string& where, VariationalConfig& out,
                bool with_layers) {
  if (!r.object(node, where)) return;
  if (with_layers)
    r.keys(node, where, {"layers", "optimizer", "learning_rate", "iterations", "spsa"});
  else
    r.keys(node, where, {"optimizer", "learning_rate", "iterations", "spsa"});
  if (with_layers) r.get(node, "layers", out.layers, where);
  std::string opt(to_string(out.train.optimizer));
  r.get(node, "optimizer", opt, where);
  if (opt == "spsa" || opt == "gradient_descent")
    out.train.optimizer = parse_optimizer(opt);
  else
    r.require(false, where + ".optimizer: must be 'spsa' or 'gradient_descent'");
  r.get(node, "learning_rate", out.train.learning_rate, where);
  r.get(node, "iterations", out.train.iterations, where);
  if (node.contains("spsa")) {
    const json& s = node.at("spsa");
    const std::string w = where + ".spsa";
    if (r.object(s, w)) {
      r.keys(s, w, {"a", "c", "A", "alpha", "gamma"});
      r.get(s, "a", out.train.spsa.a, w);
      r.get(s, "c", out.train.spsa.c, w);
      r.get(s, "A", out.train.spsa.A, w);
      r.get(s, "alpha", out.train.spsa.alpha, w);
      r.get(s, "gamma", out.train.spsa.gamma, w);
    }
  }
  r.require(out.layers >= 1, where + ".layers: must be >= 1");
  r.require(out.train.iterations >= 1, where + ".iterations: must be >= 1");
  r.require(out.train.learning_rate > 0.0, where + ".learning_rate: must be > 0");
  r.require(out.train.spsa.a > 0.0 && out.train.spsa.c > 0.0 && out.train.spsa.A >= 0.0,
            where + ".spsa: a and c must be > 0, A >= 0");
}

void read_svm(Reader& r, const json& node, const std::string& where, SvmConfig& out, bool with_gamma) {
  if (!r.object(node, where)) return;
  if (with_gamma)
    r.keys(node, where, {"C", "tol", "gamma", "max_passes"});
  else
    r.keys(node, where, {"C", "tol", "max_passes"});
  r.get(node, "C", out.C, where);
  r.get(node, "tol", out.tol, where);
  if (with_gamma) r.get(node, "gamma", out.gamma, where);
  r.get(node, "max_passes", out.max_passes, where);
  r.require(out.C > 0.0, where + ".C: must be > 0");
  r.require(out.tol > 0.0, where + ".tol: must be > 0");
  r.require(out.gamma >= 0.0, where + ".gamma: must be >= 0 (0 selects 1/d)");
  r.require(out.max_passes >= 1, where + ".max_passes: must be >= 1");
}

json train_json(const VariationalConfig& v, bool with_layers) {
  json j = {{"optimizer", std::string(to_string(v.train.optimizer))},
            {"learning_rate", v.train.learning_rate},
            {"iterations", v.train.iterations},
            {"spsa",
             {{"a", v.train.spsa.a},
              {"c", v.train.spsa.c},
              {"A", v.train.spsa.A},
              {"alpha", v.train.spsa.alpha},
              {"gamma", v.train.spsa.gamma}}}};
  if (with_layers) j["layers"] = v.layers;
  return j;
}

}  // namespace

BenchConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  std::vector<std::string> errors;
  Reader r(errors);
  BenchConfig c;
  c.base_dir = base_dir;

  if (!r.object(doc, "config")) throw ValidationError("config: expected a JSON object");
  r.keys(doc, "config",
         {"schema_version", "seed", "output_dir", "dataset", "features", "feature_map", "models",
          "fractions", "stratified", "svm", "qsvm", "mlp", "vqc", "qcnn", "qml_train_cap", "sweep",
          "save_models", "attack", "kernel_dump"});

  if (!doc.contains("schema_version"))
    errors.push_back("config.schema_version: required");
  r.get(doc, "schema_version", c.schema_version, "config");
  r.require(c.schema_version == kConfigSchemaVersion,
            "config.schema_version: unsupported version " + std::to_string(c.schema_version));
  r.get(doc, "seed", c.seed, "config");
  r.get(doc, "output_dir", c.output_dir, "config");
  r.get(doc, "stratified", c.stratified, "config");
  r.get(doc, "save_models", c.save_models, "config");
  r.get(doc, "qml_train_cap", c.qml_train_cap, "config");
  r.require(c.qml_train_cap >= 2, "config.qml_train_cap: must be >= 2");

  if (doc.contains("dataset")) {
    const json& d = doc.at("dataset");
    if (r.object(d, "dataset")) {
      r.keys(d, "dataset", {"path", "schema", "synthetic"});
      r.get(d, "path", c.dataset.path, "dataset");
      r.get(d, "schema", c.dataset.schema, "dataset");
      if (d.contains("synthetic") && !d.at("synthetic").is_null()) {
        const json& s = d.at("synthetic");
        SyntheticSpec spec;
        if (r.object(s, "dataset.synthetic")) {
          r.keys(s, "dataset.synthetic",
                 {"kind", "m", "d", "separation", "n_qubits", "layers", "gap", "theta_star"});
          r.get(s, "kind", spec.kind, "dataset.synthetic");
          r.get(s, "m", spec.m, "dataset.synthetic");
          r.get(s, "d", spec.d, "dataset.synthetic");
          r.get(s, "separation", spec.separation, "dataset.synthetic");
          r.get(s, "n_qubits", spec.n_qubits, "dataset.synthetic");
          r.get(s, "layers", spec.layers, "dataset.synthetic");
          r.get(s, "gap", spec.gap, "dataset.synthetic");
          r.get(s, "theta_star", spec.theta_star, "dataset.synthetic");
          r.require(spec.kind == "blobs" || spec.kind == "adhoc",
                    "dataset.synthetic.kind: must be 'blobs' or 'adhoc'");
          r.require(spec.m >= 4, "dataset.synthetic.m: must be >= 4");
          if (spec.kind == "blobs") {
            r.require(spec.m % 2 == 0, "dataset.synthetic.m: must be even for blobs");
            r.require(spec.d >= 1, "dataset.synthetic.d: must be >= 1");
            r.require(spec.separation >= 0.0, "dataset.synthetic.separation: must be >= 0");
          } else {
            r.require(spec.n_qubits >= 1 && spec.n_qubits <= kMaxQubits,
                      "dataset.synthetic.n_qubits: must lie in [1, 24]");
            r.require(spec.layers >= 1, "dataset.synthetic.layers: must be >= 1");
            r.require(spec.gap >= 0.0 && spec.gap < 1.0, "dataset.synthetic.gap: must lie in [0, 1)");
            r.require(spec.theta_star.empty() ||
                          spec.theta_star.size() == std::size_t(spec.n_qubits * spec.layers),
                      "dataset.synthetic.theta_star: must hold n_qubits * layers values");
          }
        }
        c.dataset.synthetic = spec;
      }
    }
  }

  if (doc.contains("features")) {
    const json& f = doc.at("features");
    if (r.object(f, "features")) {
      r.keys(f, "features", {"k", "classical"});
      r.get(f, "k", c.k, "features");
      r.get(f, "classical", c.classical_features, "features");
    }
  }
  r.require(c.k >= 1 && c.k <= kMaxQubits, "features.k: must lie in [1, 24]");
  r.require(c.classical_features == "all" || c.classical_features == "reduced",
            "features.classical: must be 'all' or 'reduced'");

  if (doc.contains("feature_map")) {
    const json& f = doc.at("feature_map");
    if (r.object(f, "feature_map")) {
      r.keys(f, "feature_map", {"kind", "depth", "entanglement"});
      std::string kind(to_string(c.feature_map.kind)), ent(to_string(c.feature_map.entanglement));
      r.get(f, "kind", kind, "feature_map");
      r.get(f, "depth", c.feature_map.depth, "feature_map");
      r.get(f, "entanglement", ent, "feature_map");
      if (kind == "zz" || kind == "angle")
        c.feature_map.kind = parse_feature_map_kind(kind);
      else
        errors.push_back("feature_map.kind: must be 'zz' or 'angle'");
      if (ent == "linear" || ent == "full")
        c.feature_map.entanglement = parse_entanglement(ent);
      else
        errors.push_back("feature_map.entanglement: must be 'linear' or 'full'");
      r.require(c.feature_map.depth >= 1, "feature_map.depth: must be >= 1");
    }
  }
  c.feature_map.n_qubits = c.k;

  r.get(doc, "models", c.models, "config");
  r.require(!c.models.empty(), "config.models: must not be empty");
  for (const auto& m : c.models) {
    const auto& ids = known_models();
    if (std::find(ids.begin(), ids.end(), m) == ids.end())
      errors.push_back("config.models: unknown model '" + m + "'");
  }
  if (std::find(c.models.begin(), c.models.end(), "qcnn") != c.models.end())
    r.require(c.k >= 2 && std::has_single_bit(static_cast<unsigned>(c.k)),
              "features.k: qcnn needs a power-of-two qubit count >= 2");

  r.get(doc, "fractions", c.fractions, "config");
  r.require(!c.fractions.empty(), "config.fractions: must not be empty");
  for (double f : c.fractions)
    r.require(f > 0.0 && f < 1.0, "config.fractions: " + std::to_string(f) + " is outside (0, 1)");

  if (doc.contains("svm")) read_svm(r, doc.at("svm"), "svm", c.svm, true);
  if (doc.contains("qsvm")) read_svm(r, doc.at("qsvm"), "qsvm", c.qsvm, false);

  if (doc.contains("mlp")) {
    const json& m = doc.at("mlp");
    if (r.object(m, "mlp")) {
      r.keys(m, "mlp", {"hidden", "learning_rate", "epochs", "batch"});
      r.get(m, "hidden", c.mlp.hidden, "mlp");
      r.get(m, "learning_rate", c.mlp.learning_rate, "mlp");
      r.get(m, "epochs", c.mlp.epochs, "mlp");
      r.get(m, "batch", c.mlp.batch, "mlp");
    }
  }
  for (int h : c.mlp.hidden) r.require(h >= 1, "mlp.hidden: layer sizes must be >= 1");
  r.require(c.mlp.learning_rate > 0.0, "mlp.learning_rate: must be > 0");
  r.require(c.mlp.epochs >= 0, "mlp.epochs: must be >= 0");
  r.require(c.mlp.batch >= 0, "mlp.batch: must be >= 0");

  c.vqc.train.optimizer = Optimizer::spsa;
  c.qcnn.train.optimizer = Optimizer::spsa;
  if (doc.contains("vqc")) read_train(r, doc.at("vqc"), "vqc", c.vqc, true);
  if (doc.contains("qcnn")) read_train(r, doc.at("qcnn"), "qcnn", c.qcnn, false);

  if (doc.contains("sweep")) {
    const json& s = doc.at("sweep");
    if (r.object(s, "sweep")) {
      r.keys(s, "sweep", {"include_qml"});
      r.get(s, "include_qml", c.sweep_include_qml, "sweep");
    }
  }

  if (doc.contains("attack")) {
    const json& a = doc.at("attack");
    if (r.object(a, "attack")) {
      r.keys(a, "attack", {"fraction", "epsilons", "noise_levels", "shots", "max_samples"});
      r.get(a, "fraction", c.attack.fraction, "attack");
      r.get(a, "epsilons", c.attack.epsilons, "attack");
      r.get(a, "noise_levels", c.attack.noise_levels, "attack");
      r.get(a, "shots", c.attack.shots, "attack");
      r.get(a, "max_samples", c.attack.max_samples, "attack");
    }
  }
  r.require(c.attack.fraction > 0.0 && c.attack.fraction < 1.0, "attack.fraction: must lie in (0, 1)");
  for (double e : c.attack.epsilons) r.require(e >= 0.0, "attack.epsilons: values must be >= 0");
  for (double p : c.attack.noise_levels)
    r.require(p >= 0.0 && p <= 1.0, "attack.noise_levels: values must lie in [0, 1]");
  r.require(c.attack.shots >= 100, "attack.shots: must be >= 100");
  r.require(c.attack.max_samples >= 1, "attack.max_samples: must be >= 1");

  if (doc.contains("kernel_dump")) {
    const json& k = doc.at("kernel_dump");
    if (r.object(k, "kernel_dump")) {
      r.keys(k, "kernel_dump", {"kind", "max_rows", "fraction"});
      r.get(k, "kind", c.kernel_dump.kind, "kernel_dump");
      r.get(k, "max_rows", c.kernel_dump.max_rows, "kernel_dump");
      r.get(k, "fraction", c.kernel_dump.fraction, "kernel_dump");
    }
  }
  r.require(c.kernel_dump.kind == "quantum" || c.kernel_dump.kind == "rbf",
            "kernel_dump.kind: must be 'quantum' or 'rbf'");
  r.require(c.kernel_dump.max_rows >= 1, "kernel_dump.max_rows: must be >= 1");
  r.require(c.kernel_dump.fraction > 0.0 && c.kernel_dump.fraction < 1.0,
            "kernel_dump.fraction: must lie in (0, 1)");

  if (!errors.empty()) {
    std::ostringstream os;
    os << "invalid configuration (" << errors.size() << " problem" << (errors.size() > 1 ? "s" : "")
       << "):";
    for (const auto& e : errors) os << "\n  - " << e;
    throw ValidationError(os.str());
  }
  return c;
}

BenchConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("config file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(doc, path.parent_path());
}

json to_json(const BenchConfig& c) {
  json dataset = {{"path", c.dataset.path}, {"schema", c.dataset.schema}, {"synthetic", nullptr}};
  if (c.dataset.synthetic) {
    const auto& s = *c.dataset.synthetic;
    dataset["synthetic"] = {{"kind", s.kind},         {"m", s.m},           {"d", s.d},
                            {"separation", s.separation}, {"n_qubits", s.n_qubits},
                            {"layers", s.layers},     {"gap", s.gap},       {"theta_star", s.theta_star}};
  }
  auto svm_json = [](const SvmConfig& s, bool with_gamma) {
    json j = {{"C", s.C}, {"tol", s.tol}, {"max_passes", s.max_passes}};
    if (with_gamma) j["gamma"] = s.gamma;
    return j;
  };
  return {
      {"schema_version", c.schema_version},
      {"seed", c.seed},
      {"output_dir", c.output_dir},
      {"dataset", dataset},
      {"features", {{"k", c.k}, {"classical", c.classical_features}}},
      {"feature_map",
       {{"kind", std::string(to_string(c.feature_map.kind))},
        {"depth", c.feature_map.depth},
        {"entanglement", std::string(to_string(c.feature_map.entanglement))}}},
      {"models", c.models},
      {"fractions", c.fractions},
      {"stratified", c.stratified},
      {"svm", svm_json(c.svm, true)},
      {"qsvm", svm_json(c.qsvm, false)},
      {"mlp",
       {{"hidden", c.mlp.hidden},
        {"learning_rate", c.mlp.learning_rate},
        {"epochs", c.mlp.epochs},
        {"batch", c.mlp.batch}}},
      {"vqc", train_json(c.vqc, true)},
      {"qcnn", train_json(c.qcnn, false)},
      {"qml_train_cap", c.qml_train_cap},
      {"sweep", {{"include_qml", c.sweep_include_qml}}},
      {"save_models", c.save_models},
      {"attack",
       {{"fraction", c.attack.fraction},
        {"epsilons", c.attack.epsilons},
        {"noise_levels", c.attack.noise_levels},
        {"shots", c.attack.shots},
        {"max_samples", c.attack.max_samples}}},
      {"kernel_dump",
       {{"kind", c.kernel_dump.kind},
        {"max_rows", c.kernel_dump.max_rows},
        {"fraction", c.kernel_dump.fraction}}},
  };
}

std::string config_hash(const BenchConfig& config) {
  const std::string canonical = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void override_seed(BenchConfig& config, std::uint64_t seed) { config.seed = seed; }

}  // namespace qmlbench
