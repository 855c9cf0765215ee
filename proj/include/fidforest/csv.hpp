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

#ifndef FIDFOREST_CSV_HPP
#define FIDFOREST_CSV_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fidforest/dataset.hpp"
#include "fidforest/random.hpp"

namespace fidforest {

/// Column selection for CSV ingestion.  The target may be a header name
/// or a 0-based column index; an empty feature list means "all remaining
/// columns".  A cell matching any entry of `missing_values` (or failing
/// numeric parsing) drops the whole row.
struct ColumnSpec {
  std::string target;
  std::vector<std::string> feature_columns;
  std::vector<std::string> missing_values = {""};
};

struct CsvResult {
  Dataset data;
  std::string target_name;
  std::vector<std::string> feature_names;
  std::size_t dropped_rows = 0;
};

/// Reads a comma-delimited file with a header row into a numeric Dataset.
/// Rows with a missing or non-numeric cell in any selected column are
/// dropped (never coerced); the drop count is reported.  Row ids are the
/// original 0-based data-row numbers.
CsvResult read_csv(const std::filesystem::path& path, const ColumnSpec& spec);

/// Uniformly random partition without replacement; the test part holds
/// floor(test_fraction * n) rows.  Both parts must be non-empty.
std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double test_fraction,
                                             RandomStream& stream);

}  // namespace fidforest

#endif  // FIDFOREST_CSV_HPP
