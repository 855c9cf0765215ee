/*
 * Copyright 2026 The fidforest Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "fidforest/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fidforest/errors.hpp"

namespace fidforest {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

bool parse_double(const std::string& text, double& out) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::size_t resolve_column(const std::string& key, const std::vector<std::string>& header,
                           const char* what) {
  const auto it = std::find(header.begin(), header.end(), key);
  if (it != header.end()) return static_cast<std::size_t>(it - header.begin());
  // Fall back to a 0-based index.
  std::size_t idx = 0;
  const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), idx);
  if (ec == std::errc() && ptr == key.data() + key.size() && idx < header.size()) {
    return idx;
  }
  throw DataError(std::string(what) + " column not found: '" + key + "'");
}

}  // namespace

CsvResult read_csv(const std::filesystem::path& path, const ColumnSpec& spec) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw DataError("empty file: " + path.string());
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const std::vector<std::string> header = split_line(line);
  if (header.empty()) throw DataError("missing header row: " + path.string());

  const std::size_t target_col = resolve_column(spec.target, header, "target");

  std::vector<std::size_t> feature_cols;
  if (spec.feature_columns.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (c != target_col) feature_cols.push_back(c);
    }
  } else {
    for (const std::string& name : spec.feature_columns) {
      const std::size_t c = resolve_column(name, header, "feature");
      if (c == target_col) throw DataError("feature column equals target: '" + name + "'");
      feature_cols.push_back(c);
    }
  }
  if (feature_cols.empty()) throw DataError("no feature columns selected");

  const auto is_missing = [&](const std::string& cell) {
    return std::find(spec.missing_values.begin(), spec.missing_values.end(), cell) !=
           spec.missing_values.end();
  };

  std::vector<std::vector<double>> feature_rows;
  std::vector<double> response;
  std::vector<std::int64_t> row_ids;
  std::size_t dropped = 0;
  std::int64_t data_row = -1;

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    ++data_row;
    const std::vector<std::string> cells = split_line(line);

    bool drop = false;
    double target_value = 0.0;
    std::vector<double> row(feature_cols.size());
    const auto cell_at = [&](std::size_t c) -> const std::string& {
      static const std::string kEmpty;
      return c < cells.size() ? cells[c] : kEmpty;
    };
    if (is_missing(cell_at(target_col)) || !parse_double(cell_at(target_col), target_value)) {
      drop = true;
    }
    for (std::size_t k = 0; !drop && k < feature_cols.size(); ++k) {
      const std::string& cell = cell_at(feature_cols[k]);
      if (is_missing(cell) || !parse_double(cell, row[k])) drop = true;
    }
    if (drop) {
      ++dropped;
      continue;
    }
    feature_rows.push_back(std::move(row));
    response.push_back(target_value);
    row_ids.push_back(data_row);
  }
  if (response.empty()) {
    throw DataError("no usable rows after dropping missing values: " + path.string());
  }

  const std::size_t n = response.size();
  const std::size_t p = feature_cols.size();
  std::vector<double> features(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) features[j * n + i] = feature_rows[i][j];
  }

  CsvResult result;
  result.data = make_dataset(n, p, std::move(features), std::move(response),
                             std::move(row_ids));
  result.target_name = header[target_col];
  for (std::size_t c : feature_cols) result.feature_names.push_back(header[c]);
  result.dropped_rows = dropped;
  return result;
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double test_fraction,
                                             RandomStream& stream) {
  if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
    throw InvalidInputError("train_test_split: fraction must be in (0, 1)");
  }
  const std::size_t n = data.n_rows;
  const auto n_test = static_cast<std::uint32_t>(
      std::floor(test_fraction * static_cast<double>(n)));
  if (n_test == 0 || n_test >= n) {
    throw InvalidInputError("train_test_split: both parts must be non-empty");
  }
  const std::vector<std::uint32_t> test_rows =
      stream.sample_without_replacement(static_cast<std::uint32_t>(n), n_test);
  std::vector<bool> in_test(n, false);
  for (std::uint32_t r : test_rows) in_test[r] = true;
  std::vector<std::uint32_t> train_rows;
  train_rows.reserve(n - n_test);
  for (std::uint32_t r = 0; r < n; ++r) {
    if (!in_test[r]) train_rows.push_back(r);
  }
  std::vector<std::uint32_t> test_sorted(test_rows.begin(), test_rows.end());
  std::sort(test_sorted.begin(), test_sorted.end());
  return {subset(data, train_rows), subset(data, test_sorted)};
}

}  // namespace fidforest
