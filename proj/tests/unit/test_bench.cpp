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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qmlbench/bench.hpp"
#include "qmlbench/cli.hpp"
#include "qmlbench/report.hpp"

using namespace qmlbench;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("qmlbench_bench_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name, std::ios::binary) << content;
    return path_ / name;
  }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const fs::path kFixture = fs::path(QMLBENCH_SOURCE_DIR) / "data/fixture/alzheimers_fixture.csv";
const fs::path kSchema = fs::path(QMLBENCH_SOURCE_DIR) / "data/schema/alzheimers.schema.json";

json blobs_doc(std::vector<std::string> models, std::vector<double> fractions) {
  return {{"schema_version", 1},
          {"seed", 11},
          {"dataset", {{"synthetic", {{"kind", "blobs"}, {"m", 80}, {"d", 4}, {"separation", 2.0}}}}},
          {"features", {{"k", 2}}},
          {"models", models},
          {"fractions", fractions},
          {"mlp", {{"hidden", {8}}, {"epochs", 100}}},
          {"vqc", {{"iterations", 10}}},
          {"qcnn", {{"iterations", 10}}},
          {"save_models", false}};
}

std::string validation_message(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qmlbench");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Config, DefaultsFromMinimalDocument) {
  const BenchConfig c = parse_config(json{{"schema_version", 1}});
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.fractions.size(), 9u);
  EXPECT_EQ(c.vqc.train.spsa.a, 0.2);
  EXPECT_EQ(c.vqc.train.spsa.c, 0.1);
  EXPECT_EQ(c.vqc.train.spsa.A, 20.0);
}

TEST(Config, UnknownKeysListedTogether) {
  json doc = blobs_doc({"svm"}, {0.5});
  doc["bogus"] = 1;
  doc["mlp"]["dropout"] = 0.1;
  doc["dataset"]["synthetic"]["noise"] = 2;
  const std::string msg = validation_message(doc);
  EXPECT_NE(msg.find("'bogus'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'dropout'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("'noise'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("3 problems"), std::string::npos) << msg;
}

TEST(Config, RejectsBadValues) {
  EXPECT_FALSE(validation_message(json::object()).empty());
  EXPECT_FALSE(validation_message({{"schema_version", 2}}).empty());
  EXPECT_FALSE(validation_message({{"schema_version", 1}, {"models", {"svm", "rf"}}}).empty());
  EXPECT_FALSE(validation_message({{"schema_version", 1}, {"fractions", {0.0}}}).empty());
  EXPECT_FALSE(validation_message({{"schema_version", 1}, {"fractions", {1.0}}}).empty());
  EXPECT_FALSE(validation_message({{"schema_version", 1}, {"svm", {{"C", -1}}}}).empty());
  EXPECT_FALSE(validation_message({{"schema_version", 1}, {"seed", "x"}}).empty());
  EXPECT_FALSE(validation_message(json::array()).empty());
}

TEST(Config, RelativePathsResolveAgainstConfigFile) {
  TempDir tmp;
  const fs::path cfg = tmp.write("c.json", json{{"schema_version", 1}, {"dataset", {{"path", "x.csv"}}}}.dump());
  const BenchConfig c = load_config(cfg);
  EXPECT_EQ(c.base_dir, tmp.path());
  try {
    resolve_dataset(c);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find((tmp.path() / "x.csv").string()), std::string::npos) << e.what();
  }
}

TEST(Config, MalformedFileIsValidationError) {
  TempDir tmp;
  EXPECT_THROW(load_config(tmp.write("c.json", "{ not json")), ValidationError);
  EXPECT_THROW(load_config(tmp.path() / "missing.json"), ValidationError);
}

TEST(Config, HashStableAndSensitive) {
  const BenchConfig a = parse_config(blobs_doc({"svm"}, {0.5}));
  const BenchConfig b = parse_config(json::parse(to_json(a).dump()));
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(config_hash(a).size(), 16u);
  BenchConfig c = a;
  override_seed(c, 12);
  EXPECT_NE(config_hash(a), config_hash(c));
}

TEST(Prepare, ScalerIgnoresTestRows) {
  const Split s = split(synth_blobs(60, 5, 2.0, 3), 0.5, 3);
  const PreparedData a = prepare(s, 3);
  Split mutated = s;
  mutated.test.features.array() *= 100.0;
  const PreparedData b = prepare(mutated, 3);
  EXPECT_EQ(a.scaler.min, b.scaler.min);
  EXPECT_EQ(a.scaler.max, b.scaler.max);
  EXPECT_EQ(a.columns, b.columns);
  EXPECT_EQ(a.train_x, b.train_x);
  EXPECT_EQ(a.train_x.cols(), 3);
  EXPECT_GE(a.train_x.minCoeff(), 0.0);
  EXPECT_LE(a.train_x.maxCoeff(), kPi);
}

TEST(Prepare, NonPositiveKKeepsAll) {
  const Split s = split(synth_blobs(20, 4, 2.0, 3), 0.5, 3);
  EXPECT_EQ(prepare(s, 0).train_x.cols(), 4);
  EXPECT_EQ(prepare(s, 9).train_x.cols(), 4);
}

TEST(RunBenchmark, SingleCell) {
  const BenchConfig c = parse_config(blobs_doc({"svm"}, {0.5}));
  const BenchReport r = run_benchmark(c);
  ASSERT_EQ(r.rows.size(), 1u);
  const ReportRow& row = r.rows[0];
  EXPECT_EQ(row.model, "svm");
  EXPECT_EQ(row.train_fraction, 0.5);
  ASSERT_TRUE(row.test_accuracy);
  EXPECT_GT(*row.test_accuracy, 0.8);
  EXPECT_EQ(row.train_rows, 40u);
  EXPECT_EQ(row.test_rows, 40u);
  EXPECT_EQ(row.n_features, 4);
  EXPECT_EQ(row.config_hash, config_hash(c));
  EXPECT_EQ(r.config_hash, config_hash(c));
  EXPECT_EQ(r.tool_version, tool_version());
  EXPECT_TRUE(row.error.empty());
}

TEST(RunBenchmark, AllModelsProduceSaneRows) {
  const BenchConfig c = parse_config(blobs_doc({"svm", "mlp", "qsvm", "vqc", "qcnn"}, {0.5, 0.3}));
  const BenchReport r = run_benchmark(c);
  ASSERT_EQ(r.rows.size(), 10u);
  for (const ReportRow& row : r.rows) {
    SCOPED_TRACE(row.model);
    ASSERT_TRUE(row.test_accuracy) << row.error;
    EXPECT_GE(*row.test_accuracy, 0.0);
    EXPECT_LE(*row.test_accuracy, 1.0);
    EXPECT_GE(row.train_cpu_seconds, 0.0);
    EXPECT_GE(row.predict_cpu_seconds, 0.0);
    EXPECT_GT(row.peak_memory_bytes, 0u);
    EXPECT_EQ(row.config_hash, r.config_hash);
    if (is_quantum_model(row.model)) {
      EXPECT_EQ(row.n_qubits, 2);
      EXPECT_EQ(row.statevector_bytes, 64u);
      EXPECT_EQ(row.n_features, 2);
    } else {
      EXPECT_EQ(row.n_qubits, 0);
      EXPECT_EQ(row.n_features, 4);
    }
  }
  EXPECT_EQ(r.rows[0].train_fraction, 0.3);
  EXPECT_EQ(r.rows[1].train_fraction, 0.5);
}

TEST(RunBenchmark, FailedCellKeepsGoing) {
  BenchConfig c = parse_config(blobs_doc({"qcnn", "svm"}, {0.5}));
  c.k = 3;
  const BenchReport r = run_benchmark(c);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_FALSE(r.rows[0].test_accuracy);
  EXPECT_FALSE(r.rows[0].error.empty());
  EXPECT_TRUE(r.rows[1].test_accuracy) << r.rows[1].error;
}

TEST(RunBenchmark, DeterministicModuloTiming) {
  const BenchConfig c = parse_config(blobs_doc({"svm", "mlp", "vqc"}, {0.5}));
  const BenchReport a = run_benchmark(c), b = run_benchmark(c);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].test_accuracy, b.rows[i].test_accuracy);
    EXPECT_EQ(a.rows[i].parameter_count, b.rows[i].parameter_count);
    EXPECT_EQ(a.rows[i].seed, b.rows[i].seed);
  }
}

TEST(SweepFractions, ClassicalGrid) {
  json doc = blobs_doc({"svm", "mlp", "vqc"}, {0.5});
  doc.erase("fractions");
  const BenchReport r = sweep_fractions(parse_config(doc));
  EXPECT_EQ(r.rows.size(), 18u);
  for (const auto& row : r.rows) EXPECT_FALSE(is_quantum_model(row.model));
}

TEST(SweepFractions, QuantumOnlyNeedsOptIn) {
  EXPECT_THROW(sweep_fractions(parse_config(blobs_doc({"vqc"}, {0.5}))), ValidationError);
  json doc = blobs_doc({"vqc"}, {0.5});
  doc["sweep"] = {{"include_qml", true}};
  EXPECT_EQ(sweep_fractions(parse_config(doc)).rows.size(), 1u);
}

TEST(EmitReport, FilesAndReproducibleBytes) {
  TempDir tmp;
  const BenchReport r = run_benchmark(parse_config(blobs_doc({"svm", "mlp"}, {0.5})));
  const EmittedFiles f = emit_report(r, tmp.path() / "out");
  ASSERT_TRUE(fs::exists(f.json));
  ASSERT_TRUE(fs::exists(f.csv));
  ASSERT_TRUE(fs::exists(f.plotdata));
  const std::string csv = slurp(f.csv), js = slurp(f.json), plot = slurp(f.plotdata);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(csv.rfind("model,", 0), 0u);
  const json doc = json::parse(js);
  EXPECT_EQ(doc.at("rows").size(), 2u);
  EXPECT_EQ(doc.at("config_hash"), r.config_hash);
  std::size_t series = 0;
  for (std::size_t p = plot.find("# "); p != std::string::npos; p = plot.find("# ", p + 1)) ++series;
  EXPECT_EQ(series, 2u);

  emit_report(r, tmp.path() / "out");
  EXPECT_EQ(slurp(f.csv), csv);
  EXPECT_EQ(slurp(f.json), js);
  EXPECT_EQ(slurp(f.plotdata), plot);
}

TEST(EmitReport, UnwritableDirectory) {
  TempDir tmp;
  const fs::path blocker = tmp.write("file", "x");
  EXPECT_THROW(emit_report(BenchReport{}, blocker / "sub"), IoError);
}

TEST(EmitReport, FailedRowsInCsvNotPlot) {
  BenchReport r;
  r.rows.push_back({});
  r.rows[0].model = "qsvm";
  r.rows[0].error = "boom";
  std::ostringstream csv, plot;
  write_report_csv(csv, r);
  write_plotdata(plot, r);
  EXPECT_NE(csv.str().find("boom"), std::string::npos);
  EXPECT_EQ(plot.str().find("qsvm"), std::string::npos);
}

TEST(RunAttack, SweepAndNoise) {
  json doc = blobs_doc({"vqc"}, {0.5});
  doc["attack"] = {{"epsilons", {0.0, 0.3}}, {"noise_levels", {0.0, 1.0}}, {"shots", 100}, {"max_samples", 10}};
  const auto reports = run_attack(parse_config(doc), "vqc");
  ASSERT_EQ(reports.size(), 4u);
  EXPECT_EQ(reports[0].attack, "fgsm");
  EXPECT_EQ(reports[0].attacked_accuracy, reports[0].clean_accuracy);
  EXPECT_EQ(reports[2].attack, "noise");
  for (const auto& rep : reports) EXPECT_EQ(rep.samples, 10u);
  EXPECT_EQ(run_attack(parse_config(doc), "mlp").size(), 2u);
}

TEST(DumpKernel, QuantumAndRbf) {
  json doc = blobs_doc({"svm"}, {0.5});
  doc["kernel_dump"] = {{"max_rows", 6}};
  const BenchConfig c = parse_config(doc);
  const KernelMatrix q = dump_kernel(c, "quantum"), g = dump_kernel(c, "rbf");
  EXPECT_EQ(q.size(), 6);
  EXPECT_EQ(g.size(), 6);
  for (Eigen::Index i = 0; i < 6; ++i) {
    EXPECT_NEAR(q.entries(i, i), 1.0, 1e-12);
    EXPECT_EQ(g.entries(i, i), 1.0);
  }
  EXPECT_THROW(dump_kernel(c, "poly"), ValidationError);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({}).code, kExitValidation);
  EXPECT_EQ(cli({"--frobnicate"}).code, kExitValidation);
  EXPECT_EQ(cli({"bench", "run"}).code, kExitValidation);
  EXPECT_EQ(cli({"--version"}).code, kExitOk);
}

TEST(Cli, MissingDatasetIsRuntimeError) {
  TempDir tmp;
  const fs::path cfg =
      tmp.write("c.json", json{{"schema_version", 1}, {"dataset", {{"path", "nowhere.csv"}}}}.dump());
  const CliResult r = cli({"bench", "run", "--config", cfg.string()});
  EXPECT_EQ(r.code, kExitRuntime);
  EXPECT_NE(r.err.find("nowhere.csv"), std::string::npos) << r.err;
}

TEST(Cli, InvalidConfigIsValidationError) {
  TempDir tmp;
  const fs::path cfg = tmp.write("c.json", json{{"schema_version", 1}, {"typo", 1}}.dump());
  const CliResult r = cli({"bench", "run", "--config", cfg.string()});
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("typo"), std::string::npos) << r.err;
}

TEST(Cli, RankFeaturesOnFixture) {
  const CliResult r = cli({"rank-features", "--data", kFixture.string(), "--schema", kSchema.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("MemoryComplaints\t", 0), 0u) << r.out;
}

TEST(Cli, SeedOverrideChangesRows) {
  TempDir tmp;
  json doc = blobs_doc({"mlp"}, {0.5});
  doc["output_dir"] = "out";
  const fs::path cfg = tmp.write("c.json", doc.dump());
  ASSERT_EQ(cli({"bench", "run", "--config", cfg.string()}).code, kExitOk);
  const json a = json::parse(slurp(tmp.path() / "out/report.json"));
  ASSERT_EQ(cli({"--seed", "99", "bench", "run", "--config", cfg.string()}).code, kExitOk);
  const json b = json::parse(slurp(tmp.path() / "out/report.json"));
  EXPECT_NE(a.at("config_hash"), b.at("config_hash"));
  EXPECT_NE(a.at("rows")[0].at("seed"), b.at("rows")[0].at("seed"));
}
