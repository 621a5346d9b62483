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

#include "qmlbench/dataio.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

#include "qmlbench/varmodels.hpp"

namespace qmlbench {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cell += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  cells.push_back(std::move(cell));
  return cells;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

bool parse_number(const std::string& raw, double& out) {
  const std::string s = trim(raw);
  if (s.empty()) return false;
  const char* begin = s.data();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

Dataset Dataset::rows(const std::vector<Eigen::Index>& indices) const {
  Dataset out;
  out.feature_names = feature_names;
  out.features.resize(static_cast<Eigen::Index>(indices.size()), dim());
  out.labels.resize(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    out.features.row(static_cast<Eigen::Index>(k)) = features.row(indices[k]);
    out.labels(static_cast<Eigen::Index>(k)) = labels(indices[k]);
  }
  return out;
}

Dataset Dataset::columns(const std::vector<Eigen::Index>& indices) const {
  Dataset out;
  out.labels = labels;
  out.features.resize(size(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    out.features.col(static_cast<Eigen::Index>(k)) = features.col(indices[k]);
    out.feature_names.push_back(feature_names[static_cast<std::size_t>(indices[k])]);
  }
  return out;
}

Dataset load_csv(const std::filesystem::path& path, const std::string& label_column,
                 const std::vector<std::string>& drop_columns, IngestReport* report) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset file " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw SchemaError("dataset file " + path.string() + " is empty");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  std::vector<std::string> header = split_csv_line(line);
  for (auto& h : header) h = trim(h);

  const auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end())
    throw SchemaError("label column '" + label_column + "' not found in " + path.string());
  const std::size_t label_idx = static_cast<std::size_t>(label_it - header.begin());

  std::vector<std::size_t> keep;
  Dataset data;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == label_idx) continue;
    if (std::find(drop_columns.begin(), drop_columns.end(), header[c]) != drop_columns.end())
      continue;
    keep.push_back(c);
    data.feature_names.push_back(header[c]);
  }

  IngestReport local;
  std::vector<double> values;
  std::vector<int> labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++local.rows_read;
    const auto cells = split_csv_line(line);
    bool ok = cells.size() == header.size();
    double label = 0.0;
    if (ok) ok = parse_number(cells[label_idx], label);
    if (ok && label != 0.0 && label != 1.0)
      throw SchemaError("label column '" + label_column + "' has non-binary value '" +
                        trim(cells[label_idx]) + "' on line " + std::to_string(line_no));
    std::vector<double> row;
    row.reserve(keep.size());
    for (std::size_t k = 0; ok && k < keep.size(); ++k) {
      double v = 0.0;
      ok = parse_number(cells[keep[k]], v);
      row.push_back(v);
    }
    if (!ok) {
      ++local.rows_rejected;
      local.rejected_lines.push_back(line_no);
      continue;
    }
    values.insert(values.end(), row.begin(), row.end());
    labels.push_back(static_cast<int>(label));
  }

  const auto m = static_cast<Eigen::Index>(labels.size());
  if (m < 1) throw DataError("no usable rows in " + path.string());
  const auto d = static_cast<Eigen::Index>(keep.size());
  data.features = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      values.data(), m, d);
  data.labels = Eigen::Map<const Eigen::VectorXi>(labels.data(), m);
  if (report) *report = std::move(local);
  return data;
}

SchemaDescriptor load_schema(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open schema descriptor " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("schema descriptor " + path.string() + ": " + e.what());
  }
  static const std::vector<std::string> known = {"schema_version", "label_column", "drop_columns",
                                                 "expected_feature_count", "feature_columns",
                                                 "key_feature"};
  SchemaDescriptor s;
  try {
    for (const auto& [key, _] : j.items())
      if (std::find(known.begin(), known.end(), key) == known.end())
        throw SchemaError("schema descriptor " + path.string() + ": unknown key '" + key + "'");
    s.schema_version = j.value("schema_version", 1);
    if (s.schema_version != 1)
      throw SchemaError("unsupported schema descriptor version " + std::to_string(s.schema_version));
    s.label_column = j.value("label_column", s.label_column);
    s.drop_columns = j.value("drop_columns", std::vector<std::string>{});
    s.expected_feature_count = j.value("expected_feature_count", 0);
    s.feature_columns = j.value("feature_columns", std::vector<std::string>{});
    s.key_feature = j.value("key_feature", std::string{});
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("schema descriptor " + path.string() + ": " + e.what());
  }
  return s;
}

Dataset load_with_schema(const std::filesystem::path& data, const SchemaDescriptor& schema,
                         IngestReport* report) {
  Dataset ds = load_csv(data, schema.label_column, schema.drop_columns, report);
  if (schema.expected_feature_count > 0 && ds.dim() != schema.expected_feature_count)
    throw SchemaError("expected " + std::to_string(schema.expected_feature_count) +
                      " feature columns in " + data.string() + ", found " +
                      std::to_string(ds.dim()));
  for (const auto& name : schema.feature_columns)
    if (std::find(ds.feature_names.begin(), ds.feature_names.end(), name) == ds.feature_names.end())
      throw SchemaError("expected column '" + name + "' missing from " + data.string());
  return ds;
}

Split split(const Dataset& data, double train_fraction, std::uint64_t seed, bool stratified) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ParameterError("train fraction must lie in (0, 1)");
  const Eigen::Index m = data.size();
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), Eigen::Index(0));
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);

  Split out;
  auto take = [&](const std::vector<Eigen::Index>& pool, std::size_t n) {
    out.train_rows.insert(out.train_rows.end(), pool.begin(), pool.begin() + static_cast<long>(n));
    out.test_rows.insert(out.test_rows.end(), pool.begin() + static_cast<long>(n), pool.end());
  };
  const auto total = static_cast<std::size_t>(std::llround(train_fraction * double(m)));
  if (stratified) {
    std::vector<Eigen::Index> by_class[2];
    for (Eigen::Index i : perm) by_class[data.labels(i) == 1 ? 1 : 0].push_back(i);
    // Largest remainder: floor per class, leftover rows to the larger fractional part.
    std::size_t n[2];
    double rem[2];
    for (int c = 0; c < 2; ++c) {
      const double exact = train_fraction * double(by_class[c].size());
      n[c] = static_cast<std::size_t>(std::floor(exact));
      rem[c] = exact - double(n[c]);
    }
    std::size_t left = total - std::min(total, n[0] + n[1]);
    for (int c : rem[1] > rem[0] ? std::array<int, 2>{1, 0} : std::array<int, 2>{0, 1}) {
      if (left > 0 && n[c] < by_class[c].size()) {
        ++n[c];
        --left;
      }
    }
    take(by_class[0], n[0]);
    take(by_class[1], n[1]);
  } else {
    take(perm, total);
  }
  if (out.train_rows.empty() || out.test_rows.empty())
    throw ParameterError("train fraction " + std::to_string(train_fraction) + " on " +
                         std::to_string(m) + " rows leaves an empty side");
  std::sort(out.train_rows.begin(), out.train_rows.end());
  std::sort(out.test_rows.begin(), out.test_rows.end());
  out.train = data.rows(out.train_rows);
  out.test = data.rows(out.test_rows);
  return out;
}

Dataset subsample(const Dataset& data, Eigen::Index count, std::uint64_t seed) {
  if (count >= data.size()) return data;
  const double fraction = double(count) / double(data.size());
  return split(data, fraction, seed, true).train;
}

Dataset synth_adhoc(int m, const FeatureMapSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& theta_star,
                    double gap, std::uint64_t seed, SynthStats* stats) {
  if (m < 2) throw ParameterError("synth_adhoc needs m >= 2");
  if (!(gap >= 0.0 && gap < 1.0)) throw ParameterError("gap must lie in [0, 1)");
  const int n = spec.n_qubits;
  if (theta_star.size() == 0 || theta_star.size() % n != 0)
    throw ParameterError("theta_star length must be a positive multiple of n_qubits");

  VqcModel teacher = make_vqc(spec, static_cast<int>(theta_star.size() / n));
  teacher.theta = theta_star;

  const Eigen::Index quota = (55 * Eigen::Index(m) + 99) / 100;
  Eigen::Index counts[2] = {0, 0};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, kPi);

  Dataset out;
  for (int q = 0; q < n; ++q) out.feature_names.push_back("x" + std::to_string(q));
  out.features.resize(m, n);
  out.labels.resize(m);

  SynthStats local;
  Eigen::Index filled = 0;
  constexpr std::size_t kMaxDraws = 1'000'000;
  Eigen::VectorXd x(n);
  while (filled < m) {
    if (local.draws >= kMaxDraws)
      throw GenerationError("gap " + std::to_string(gap) + " too large: only " +
                            std::to_string(filled) + " of " + std::to_string(m) +
                            " points accepted in " + std::to_string(kMaxDraws) + " draws");
    ++local.draws;
    for (int q = 0; q < n; ++q) x(q) = u(rng);
    const double z = readout_expectation(teacher, x);
    if (std::abs(z) < gap) {
      ++local.margin_rejected;
      continue;
    }
    const int label = z >= 0.0 ? 1 : 0;
    if (counts[label] >= quota) {
      ++local.quota_rejected;
      continue;
    }
    ++counts[label];
    out.features.row(filled) = x.transpose();
    out.labels(filled) = label;
    ++filled;
  }
  local.accepted = static_cast<std::size_t>(m);
  if (stats) *stats = local;
  return out;
}

Dataset synth_blobs(int m, int d, double separation, std::uint64_t seed) {
  if (m < 2 || m % 2 != 0) throw ParameterError("synth_blobs needs an even m >= 2");
  if (d < 1) throw ParameterError("synth_blobs needs d >= 1");
  if (!(separation >= 0.0)) throw ParameterError("separation must be >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Dataset out;
  for (int j = 0; j < d; ++j) out.feature_names.push_back("x" + std::to_string(j));
  out.features.resize(m, d);
  out.labels.resize(m);
  for (int i = 0; i < m; ++i) {
    const int label = i % 2;
    const double centre = (label == 1 ? 0.5 : -0.5) * separation;
    for (int j = 0; j < d; ++j) out.features(i, j) = centre + noise(rng);
    out.labels(i) = label;
  }
  return out;
}

}  // namespace qmlbench
