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

// Report, model and trace serialization.

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmlbench/bench.hpp"

namespace qmlbench {

nlohmann::json to_json(const ReportRow& row);
nlohmann::json to_json(const BenchReport& report);
nlohmann::json to_json(const AttackReport& report);

void write_report_csv(std::ostream& os, const BenchReport& report);

/// One "# model <id>" block per model with "fraction accuracy" lines sorted
/// by fraction; blocks are separated by two blank lines. Failed rows are
/// omitted.
void write_plotdata(std::ostream& os, const BenchReport& report);

void write_attack_csv(std::ostream& os, const std::vector<AttackReport>& reports);

/// "iteration,loss" CSV.
void write_loss_trace_csv(std::ostream& os, const std::vector<double>& trace);

/// Model file: the trained model plus the preprocessing it expects.
nlohmann::json model_to_json(const TrainedModel& trained);

struct EmittedFiles {
  std::filesystem::path json;
  std::filesystem::path csv;
  std::filesystem::path plotdata;
};

/// Writes <stem>.json, <stem>.csv and <stem>.plotdata into `dir`, creating it
/// if needed. Output is byte-stable for identical reports.
EmittedFiles emit_report(const BenchReport& report, const std::filesystem::path& dir,
                         const std::string& stem = "report");

/// Writes <stem>.json and <stem>.csv.
void emit_attack_report(const std::vector<AttackReport>& reports, const std::string& config_hash,
                        const std::filesystem::path& dir, const std::string& stem = "attack");

/// %.17g formatting used by every text output.
std::string format_double(double v);

}  // namespace qmlbench
