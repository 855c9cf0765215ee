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

#ifndef FIDFOREST_DATASET_HPP
#define FIDFOREST_DATASET_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace fidforest {

/// Numeric regression data: a column-major feature matrix, a response
/// vector and stable per-row identities.
struct Dataset {
  std::size_t n_rows = 0;
  std::size_t n_cols = 0;
  std::vector<double> features;  // column-major: features[col * n_rows + row]
  std::vector<double> response;
  std::vector<std::int64_t> row_ids;

  double x(std::size_t row, std::size_t col) const { return features[col * n_rows + row]; }
  double y(std::size_t row) const { return response[row]; }
  std::span<const double> column(std::size_t col) const {
    return {features.data() + col * n_rows, n_rows};
  }
  /// Copy of row `row` as a dense feature vector.
  std::vector<double> row(std::size_t r) const;
};

/// Validating constructor: requires n >= 1, p >= 1, finite entries and
/// unique row ids.  Empty `row_ids` defaults to 0..n-1.
Dataset make_dataset(std::size_t n_rows, std::size_t n_cols,
                     std::vector<double> features_col_major, std::vector<double> response,
                     std::vector<std::int64_t> row_ids = {});

/// Row subset (keeps row identities).
Dataset subset(const Dataset& data, std::span<const std::uint32_t> rows);

/// Sample variance of the response (denominator n); 0 for n == 1.
double response_variance(const Dataset& data);

}  // namespace fidforest

#endif  // FIDFOREST_DATASET_HPP
