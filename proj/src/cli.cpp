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

#include "qmlbench/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmlbench/bench.hpp"
#include "qmlbench/report.hpp"

namespace qmlbench {

namespace {

std::filesystem::path output_dir(const BenchConfig& config) {
  std::filesystem::path dir(config.output_dir);
  if (dir.is_relative() && !config.base_dir.empty()) dir = config.base_dir / dir;
  return dir;
}

BenchConfig load_with_seed(const std::string& path, const std::optional<std::uint64_t>& seed) {
  BenchConfig config = load_config(path);
  if (seed) override_seed(config, *seed);
  return config;
}

std::string brief(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void print_summary(std::ostream& out, const BenchReport& report, const EmittedFiles& files) {
  for (const auto& row : report.rows) {
    out << row.model << "\tfraction=" << brief(row.train_fraction);
    if (row.test_accuracy) {
      out << "\taccuracy=" << brief(*row.test_accuracy)
          << "\ttrain_cpu_s=" << brief(row.train_cpu_seconds);
    } else {
      out << "\terror=" << row.error;
    }
    out << '\n';
  }
  out << "wrote " << files.json.string() << '\n'
      << "wrote " << files.csv.string() << '\n'
      << "wrote " << files.plotdata.string() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum and classical classifier benchmark", "qmlbench"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", tool_version());

  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Override every configured seed");

  std::string config_path;
  std::string model;
  std::string kernel_kind;
  std::string data_path;
  std::string schema_path;
  std::string label = "Diagnosis";
  std::vector<std::string> drop{"PatientID", "DoctorInCharge"};

  auto* bench = app.add_subcommand("bench", "Benchmark runs");
  bench->require_subcommand(1);
  auto* bench_run = bench->add_subcommand("run", "Train and evaluate every configured model and fraction");
  bench_run->add_option("--config", config_path, "Config file")->required();
  auto* bench_sweep = bench->add_subcommand("sweep", "Training-fraction sweep");
  bench_sweep->add_option("--config", config_path, "Config file")->required();

  auto* attack = app.add_subcommand("attack", "FGSM and noise robustness probes");
  attack->add_option("--config", config_path, "Config file")->required();
  attack->add_option("--model", model, "Model id")
      ->required()
      ->check(CLI::IsMember(known_models()));

  auto* kernel = app.add_subcommand("kernel", "Kernel utilities");
  kernel->require_subcommand(1);
  auto* kernel_dump = kernel->add_subcommand("dump", "Write a Gram matrix as CSV");
  kernel_dump->add_option("--config", config_path, "Config file")->required();
  kernel_dump->add_option("--kind", kernel_kind, "quantum or rbf (default: config)")
      ->check(CLI::IsMember({"quantum", "rbf"}));

  auto* rank = app.add_subcommand("rank-features", "Rank features by label correlation");
  rank->add_option("--data", data_path, "CSV dataset")->required();
  rank->add_option("--schema", schema_path, "Schema descriptor");
  rank->add_option("--label", label, "Label column");
  rank->add_option("--drop", drop, "Columns to ignore")->delimiter(',');

  if (argc <= 1) {
    err << app.help();
    return kExitValidation;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    if (*bench_run || *bench_sweep) {
      const BenchConfig config = load_with_seed(config_path, seed);
      const BenchReport report = *bench_run ? run_benchmark(config) : sweep_fractions(config);
      const auto files = emit_report(report, output_dir(config), *bench_run ? "report" : "sweep");
      print_summary(out, report, files);
    } else if (*attack) {
      const BenchConfig config = load_with_seed(config_path, seed);
      const auto reports = run_attack(config, model);
      emit_attack_report(reports, config_hash(config), output_dir(config), "attack_" + model);
      write_attack_csv(out, reports);
    } else if (*kernel_dump) {
      const BenchConfig config = load_with_seed(config_path, seed);
      const std::string kind = kernel_kind.empty() ? config.kernel_dump.kind : kernel_kind;
      const KernelMatrix k = dump_kernel(config, kind);
      const auto dir = output_dir(config);
      std::filesystem::create_directories(dir);
      const auto path = dir / ("kernel_" + kind + ".csv");
      std::ofstream file(path, std::ios::binary | std::ios::trunc);
      if (!file) throw IoError("cannot write " + path.string());
      write_matrix_csv(file, k.entries);
      out << "wrote " << path.string() << " (" << k.size() << "x" << k.size() << ")\n";
    } else if (*rank) {
      const Dataset data = schema_path.empty() ? load_csv(data_path, label, drop)
                                               : load_with_schema(data_path, load_schema(schema_path));
      for (const auto& s : rank_features(data.features, data.labels))
        out << data.feature_names[static_cast<std::size_t>(s.index)] << '\t' << format_double(s.score)
            << '\t' << format_double(s.correlation) << '\n';
    }
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace qmlbench
