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

#ifndef FIDFOREST_FOREST_HPP
#define FIDFOREST_FOREST_HPP

#include <span>
#include <vector>

#include "fidforest/tree.hpp"

namespace fidforest {

/// An ensemble of honest trees grown on one training dataset.  Immutable
/// after training (except for the per-tree log weights the fiducial layer
/// fills in) and safe for concurrent reads.
struct HonestForest {
  std::vector<HonestTree> trees;
  ForestParams params;  // resolved values
  std::size_t n_train_rows = 0;
  std::size_t n_features = 0;

  /// Equal-weight forest prediction (basic ensemble mean).
  double predict(std::span<const double> x) const;
};

/// Train n_trees honest trees.  Each tree draws a grow subsample of
/// floor(n/4) rows and a disjoint estimation subsample of the same size
/// from a per-tree child stream (path label = tree index), grows the
/// structure greedily, estimates honest leaf values and records its SSE
/// over all n rows.  Requires n >= 8.
HonestForest train_forest(const Dataset& data, const ForestParams& params,
                          const RandomStream& base_stream, unsigned n_threads = 1);

}  // namespace fidforest

#endif  // FIDFOREST_FOREST_HPP
