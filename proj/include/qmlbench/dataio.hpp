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

// Tabular dataset ingestion, train/test splitting and synthetic generators.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qmlbench/encoding.hpp"

namespace qmlbench {

struct Dataset {
  std::vector<std::string> feature_names;
  Eigen::MatrixXd features;  // m x d
  Eigen::VectorXi labels;    // {0, 1}

  Eigen::Index size() const { return features.rows(); }
  Eigen::Index dim() const { return features.cols(); }

  /// Subset of rows in the given order.
  Dataset rows(const std::vector<Eigen::Index>& indices) const;
  /// Keeps the given columns in the given order.
  Dataset columns(const std::vector<Eigen::Index>& indices) const;

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.feature_names == b.feature_names && a.features == b.features && a.labels == b.labels;
  }
};

struct IngestReport {
  std::size_t rows_read = 0;
  std::size_t rows_rejected = 0;
  std::vector<std::size_t> rejected_lines;  // 1-based file line numbers
};

/// Reads a headered, comma-separated file. Every retained column must parse
/// as a number; rows that do not are rejected and counted.
Dataset load_csv(const std::filesystem::path& path, const std::string& label_column,
                 const std::vector<std::string>& drop_columns, IngestReport* report = nullptr);

/// Structured description of an expected dataset file.
struct SchemaDescriptor {
  int schema_version = 1;
  std::string label_column = "Diagnosis";
  std::vector<std::string> drop_columns;
  int expected_feature_count = 0;  // 0 = unchecked
  std::vector<std::string> feature_columns;
  std::string key_feature;  // column expected to rank first, informational
};

SchemaDescriptor load_schema(const std::filesystem::path& path);

/// load_csv with the descriptor's label/drop columns and feature-count check.
Dataset load_with_schema(const std::filesystem::path& data, const SchemaDescriptor& schema,
                         IngestReport* report = nullptr);

struct Split {
  Dataset train;
  Dataset test;
  std::vector<Eigen::Index> train_rows;  // ascending original row indices
  std::vector<Eigen::Index> test_rows;
};

/// Seeded shuffle split with round(fraction * m) training rows. Stratified
/// splits give each class floor(fraction * n_c) rows plus the leftover by
/// largest remainder, so every class is within one row of its share.
Split split(const Dataset& data, double train_fraction, std::uint64_t seed, bool stratified = true);

/// First `count` rows of a seeded permutation that preserves class balance;
/// used to cap quantum training sets. Returns `data` when count >= size.
Dataset subsample(const Dataset& data, Eigen::Index count, std::uint64_t seed);

struct SynthStats {
  std::size_t draws = 0;
  std::size_t accepted = 0;
  std::size_t margin_rejected = 0;  // |<Z>| < gap
  std::size_t quota_rejected = 0;   // class already full
};

/// Points uniform in [0, pi]^n labelled by a fixed teacher VQC (ansatz with
/// theta_star.size() / n layers): label 1 when <Z_0> >= 0, kept only when
/// |<Z_0>| >= gap. Each class holds at most ceil(0.55 m) points.
Dataset synth_adhoc(int m, const FeatureMapSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& theta_star,
                    double gap, std::uint64_t seed, SynthStats* stats = nullptr);

/// Two unit-variance Gaussian clusters centred at -separation/2 and
/// +separation/2 on every axis; rows alternate class 0, class 1.
Dataset synth_blobs(int m, int d, double separation, std::uint64_t seed);

}  // namespace qmlbench
