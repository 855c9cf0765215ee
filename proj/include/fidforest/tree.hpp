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

#ifndef FIDFOREST_TREE_HPP
#define FIDFOREST_TREE_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "fidforest/dataset.hpp"
#include "fidforest/random.hpp"

namespace fidforest {

struct TreeNode {
  std::int32_t split_feature = -1;  // -1 marks a leaf
  double split_value = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  bool is_leaf() const { return split_feature < 0; }
};

/// Binary split structure.  Routing is total and deterministic:
/// x goes left iff x[split_feature] <= split_value.
struct TreeStructure {
  std::vector<TreeNode> nodes;            // nodes[0] is the root
  std::vector<std::int32_t> leaf_ordinal;  // per node; -1 for internal nodes
  std::int32_t leaf_count = 0;

  /// Assign leaf ordinals in node-index order.  Call after editing nodes.
  void finalize_leaves();
  std::int32_t leaf_of(std::span<const double> x) const;
  std::int32_t leaf_of_row(const Dataset& data, std::size_t row) const;
  std::vector<std::int32_t> parents() const;
};

struct SplitChoice {
  std::int32_t feature = -1;
  double value = 0.0;
  double loss_reduction = 0.0;
};

/// Best squared-error split of `rows` over `features` (candidates are
/// midpoints of consecutive distinct sorted values; both children must
/// hold at least `min_node_size` rows).  Ties break on the lowest feature
/// index, then the smallest split value.  Returns nothing when no
/// candidate reduces the loss.
std::optional<SplitChoice> best_split(const Dataset& data,
                                      std::span<const std::uint32_t> rows,
                                      std::span<const std::int32_t> features,
                                      std::uint32_t min_node_size);

struct ForestParams {
  std::uint32_t n_trees = 1000;
  std::uint32_t min_node_size = 5;
  std::uint32_t mtry = 0;        // 0 = ceil(sqrt(p))
  std::uint32_t max_leaves = 0;  // 0 = n/10 + 1, capped at n - 4

  /// Fill the 0 defaults for a given training shape and validate ranges.
  ForestParams resolved(std::size_t n_rows, std::size_t n_cols) const;
};

/// Greedy growth on the grow subsample: at each node, `mtry` features are
/// drawn from `stream` and best_split is applied; recursion stops at the
/// minimum node size, when loss cannot be reduced, or at the leaf cap.
TreeStructure grow_tree(const Dataset& data, std::span<const std::uint32_t> grow_rows,
                        const ForestParams& params, RandomStream& stream);

struct LeafEstimate {
  std::vector<double> values;
  std::vector<std::uint32_t> counts;
};

/// Honest leaf values: per-leaf means of the estimation responses.  A leaf
/// that receives no estimation rows inherits the mean of the nearest
/// ancestor with a positive count; its own count stays 0.
LeafEstimate estimate_leaves(const TreeStructure& structure, const Dataset& data,
                             std::span<const std::uint32_t> estimate_rows);

struct HonestTree {
  TreeStructure structure;
  std::vector<double> leaf_values;
  std::vector<std::uint32_t> leaf_counts;
  std::vector<std::uint32_t> grow_rows;      // row indices into the training data
  std::vector<std::uint32_t> estimate_rows;  // disjoint from grow_rows
  double sse = 0.0;
  double log_weight = std::numeric_limits<double>::quiet_NaN();

  double predict(std::span<const double> x) const;
  double predict_row(const Dataset& data, std::size_t row) const;
};

/// Sum of squared errors of the honest tree over all rows of `data`.
double tree_sse(const HonestTree& tree, const Dataset& data);

}  // namespace fidforest

#endif  // FIDFOREST_TREE_HPP
