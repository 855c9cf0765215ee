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

#include "fidforest/forest.hpp"

#include <algorithm>

#include "fidforest/errors.hpp"
#include "fidforest/parallel.hpp"

namespace fidforest {

double HonestForest::predict(std::span<const double> x) const {
  if (trees.empty()) throw InvalidInputError("forest predict: no trees");
  double sum = 0.0;
  for (const HonestTree& t : trees) sum += t.predict(x);
  return sum / static_cast<double>(trees.size());
}

HonestForest train_forest(const Dataset& data, const ForestParams& params,
                          const RandomStream& base_stream, unsigned n_threads) {
  const std::size_t n = data.n_rows;
  if (n < 8) {
    throw DataError("train_forest: need at least 8 rows (floor(n/4) >= 2)");
  }
  const ForestParams resolved = params.resolved(n, data.n_cols);
  const std::uint32_t m = static_cast<std::uint32_t>(n / 4);

  HonestForest forest;
  forest.params = resolved;
  forest.n_train_rows = n;
  forest.n_features = data.n_cols;
  forest.trees.resize(resolved.n_trees);

  parallel_for(resolved.n_trees, n_threads, [&](std::size_t i) {
    RandomStream stream = base_stream.child(static_cast<std::uint32_t>(i));

    HonestTree tree;
    tree.grow_rows =
        stream.sample_without_replacement(static_cast<std::uint32_t>(n), m);

    // Estimation subsample: uniform m-subset of the complement.
    std::vector<bool> taken(n, false);
    for (std::uint32_t r : tree.grow_rows) taken[r] = true;
    std::vector<std::uint32_t> complement;
    complement.reserve(n - m);
    for (std::uint32_t r = 0; r < n; ++r) {
      if (!taken[r]) complement.push_back(r);
    }
    const std::vector<std::uint32_t> pick = stream.sample_without_replacement(
        static_cast<std::uint32_t>(complement.size()), m);
    tree.estimate_rows.reserve(m);
    for (std::uint32_t p : pick) tree.estimate_rows.push_back(complement[p]);

    tree.structure = grow_tree(data, tree.grow_rows, resolved, stream);
    LeafEstimate est = estimate_leaves(tree.structure, data, tree.estimate_rows);
    tree.leaf_values = std::move(est.values);
    tree.leaf_counts = std::move(est.counts);
    tree.sse = tree_sse(tree, data);
    forest.trees[i] = std::move(tree);
  });

  return forest;
}

}  // namespace fidforest
