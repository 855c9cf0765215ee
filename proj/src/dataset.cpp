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

#include "fidforest/dataset.hpp"

#include <cmath>
#include <unordered_set>

#include "fidforest/errors.hpp"

namespace fidforest {

std::vector<double> Dataset::row(std::size_t r) const {
  std::vector<double> out(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) out[c] = x(r, c);
  return out;
}

Dataset make_dataset(std::size_t n_rows, std::size_t n_cols,
                     std::vector<double> features_col_major, std::vector<double> response,
                     std::vector<std::int64_t> row_ids) {
  if (n_rows == 0 || n_cols == 0) {
    throw InvalidInputError("dataset: need at least one row and one column");
  }
  if (features_col_major.size() != n_rows * n_cols) {
    throw InvalidInputError("dataset: feature buffer size mismatch");
  }
  if (response.size() != n_rows) {
    throw InvalidInputError("dataset: response length mismatch");
  }
  for (double v : features_col_major) {
    if (!std::isfinite(v)) throw InvalidInputError("dataset: non-finite feature entry");
  }
  for (double v : response) {
    if (!std::isfinite(v)) throw InvalidInputError("dataset: non-finite response entry");
  }
  if (row_ids.empty()) {
    row_ids.resize(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) row_ids[i] = static_cast<std::int64_t>(i);
  } else if (row_ids.size() != n_rows) {
    throw InvalidInputError("dataset: row_ids length mismatch");
  }
  std::unordered_set<std::int64_t> seen(row_ids.begin(), row_ids.end());
  if (seen.size() != row_ids.size()) {
    throw InvalidInputError("dataset: row_ids must be unique");
  }
  Dataset d;
  d.n_rows = n_rows;
  d.n_cols = n_cols;
  d.features = std::move(features_col_major);
  d.response = std::move(response);
  d.row_ids = std::move(row_ids);
  return d;
}

Dataset subset(const Dataset& data, std::span<const std::uint32_t> rows) {
  if (rows.empty()) throw InvalidInputError("subset: empty row selection");
  Dataset d;
  d.n_rows = rows.size();
  d.n_cols = data.n_cols;
  d.features.resize(d.n_rows * d.n_cols);
  d.response.resize(d.n_rows);
  d.row_ids.resize(d.n_rows);
  for (std::size_t c = 0; c < d.n_cols; ++c) {
    for (std::size_t i = 0; i < d.n_rows; ++i) {
      d.features[c * d.n_rows + i] = data.x(rows[i], c);
    }
  }
  for (std::size_t i = 0; i < d.n_rows; ++i) {
    d.response[i] = data.y(rows[i]);
    d.row_ids[i] = data.row_ids[rows[i]];
  }
  return d;
}

double response_variance(const Dataset& data) {
  const std::size_t n = data.n_rows;
  double mean = 0.0;
  for (double v : data.response) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : data.response) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(n);
}

}  // namespace fidforest
