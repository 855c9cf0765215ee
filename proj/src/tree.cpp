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

#include "fidforest/tree.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "fidforest/errors.hpp"

namespace fidforest {

void TreeStructure::finalize_leaves() {
  leaf_ordinal.assign(nodes.size(), -1);
  leaf_count = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].is_leaf()) leaf_ordinal[i] = leaf_count++;
  }
}

std::int32_t TreeStructure::leaf_of(std::span<const double> x) const {
  std::int32_t node = 0;
  while (!nodes[node].is_leaf()) {
    const TreeNode& nd = nodes[node];
    node = x[nd.split_feature] <= nd.split_value ? nd.left : nd.right;
  }
  return leaf_ordinal[node];
}

std::int32_t TreeStructure::leaf_of_row(const Dataset& data, std::size_t row) const {
  std::int32_t node = 0;
  while (!nodes[node].is_leaf()) {
    const TreeNode& nd = nodes[node];
    node = data.x(row, nd.split_feature) <= nd.split_value ? nd.left : nd.right;
  }
  return leaf_ordinal[node];
}

std::vector<std::int32_t> TreeStructure::parents() const {
  std::vector<std::int32_t> parent(nodes.size(), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].is_leaf()) {
      parent[nodes[i].left] = static_cast<std::int32_t>(i);
      parent[nodes[i].right] = static_cast<std::int32_t>(i);
    }
  }
  return parent;
}

std::optional<SplitChoice> best_split(const Dataset& data,
                                      std::span<const std::uint32_t> rows,
                                      std::span<const std::int32_t> features,
                                      std::uint32_t min_node_size) {
  const std::size_t nr = rows.size();
  if (nr < 2 || nr < 2 * static_cast<std::size_t>(min_node_size)) return std::nullopt;

  double total = 0.0, total_sq = 0.0;
  double ymin = data.y(rows[0]), ymax = ymin;
  for (std::uint32_t r : rows) {
    const double v = data.y(r);
    total += v;
    total_sq += v * v;
    ymin = std::min(ymin, v);
    ymax = std::max(ymax, v);
  }
  if (ymin == ymax) return std::nullopt;  // constant response, loss already 0

  const double n = static_cast<double>(nr);
  const double parent_sse = std::max(0.0, total_sq - total * total / n);
  const double gain_tol = 1e-12 * parent_sse;

  std::vector<std::pair<double, double>> xy(nr);  // (feature value, response)
  std::optional<SplitChoice> best;

  std::vector<std::int32_t> ordered(features.begin(), features.end());
  std::sort(ordered.begin(), ordered.end());
  ordered.erase(std::unique(ordered.begin(), ordered.end()), ordered.end());

  for (std::int32_t f : ordered) {
    for (std::size_t i = 0; i < nr; ++i) {
      xy[i] = {data.x(rows[i], f), data.y(rows[i])};
    }
    std::sort(xy.begin(), xy.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    double left_sum = 0.0;
    for (std::size_t i = 1; i < nr; ++i) {
      left_sum += xy[i - 1].second;
      if (xy[i - 1].first == xy[i].first) continue;
      const std::size_t nl = i, nrv = nr - i;
      if (nl < min_node_size || nrv < min_node_size) continue;
      const double right_sum = total - left_sum;
      const double reduction = left_sum * left_sum / static_cast<double>(nl) +
                               right_sum * right_sum / static_cast<double>(nrv) -
                               total * total / n;
      if (reduction <= gain_tol) continue;
      double mid = xy[i - 1].first + 0.5 * (xy[i].first - xy[i - 1].first);
      // Adjacent doubles can round the midpoint onto the right value; fall
      // back to the left value, which induces the same partition under the
      // "<= goes left" rule.
      if (!(mid < xy[i].first)) mid = xy[i - 1].first;
      if (!best || reduction > best->loss_reduction) {
        best = SplitChoice{f, mid, reduction};
      }
    }
  }
  return best;
}

ForestParams ForestParams::resolved(std::size_t n_rows, std::size_t n_cols) const {
  ForestParams p = *this;
  if (p.mtry == 0) {
    p.mtry = static_cast<std::uint32_t>(
        std::ceil(std::sqrt(static_cast<double>(n_cols))));
  }
  if (p.max_leaves == 0) {
    const std::size_t by_tenth = n_rows / 10 + 1;
    // Keep n - l(T) - 1 >= 3 so every tree stays weight-eligible.
    const std::size_t dof_cap = n_rows > 4 ? n_rows - 4 : 1;
    p.max_leaves = static_cast<std::uint32_t>(std::max<std::size_t>(
        1, std::min(by_tenth, dof_cap)));
  }
  if (p.n_trees < 1) throw InvalidInputError("params: n_trees must be >= 1");
  if (p.min_node_size < 1) throw InvalidInputError("params: min_node_size must be >= 1");
  if (p.mtry < 1 || p.mtry > n_cols) {
    throw InvalidInputError("params: mtry must be in [1, p]");
  }
  if (p.max_leaves < 1) throw InvalidInputError("params: max_leaves must be >= 1");
  return p;
}

TreeStructure grow_tree(const Dataset& data, std::span<const std::uint32_t> grow_rows,
                        const ForestParams& params, RandomStream& stream) {
  if (grow_rows.empty()) throw InvalidInputError("grow_tree: empty grow sample");

  TreeStructure tree;
  tree.nodes.emplace_back();

  struct Pending {
    std::int32_t node;
    std::vector<std::uint32_t> rows;
  };
  std::deque<Pending> queue;
  queue.push_back({0, {grow_rows.begin(), grow_rows.end()}});
  std::uint32_t leaves = 1;

  while (!queue.empty()) {
    Pending item = std::move(queue.front());
    queue.pop_front();
    if (leaves >= params.max_leaves) continue;
    if (item.rows.size() < 2 ||
        item.rows.size() < 2 * static_cast<std::size_t>(params.min_node_size)) {
      continue;
    }
    std::vector<std::uint32_t> picked = stream.sample_without_replacement(
        static_cast<std::uint32_t>(data.n_cols), params.mtry);
    std::vector<std::int32_t> features(picked.begin(), picked.end());
    const auto choice = best_split(data, item.rows, features, params.min_node_size);
    if (!choice) continue;

    std::vector<std::uint32_t> left_rows, right_rows;
    left_rows.reserve(item.rows.size());
    right_rows.reserve(item.rows.size());
    for (std::uint32_t r : item.rows) {
      (data.x(r, choice->feature) <= choice->value ? left_rows : right_rows).push_back(r);
    }

    const std::int32_t left_id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    const std::int32_t right_id = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    TreeNode& nd = tree.nodes[item.node];
    nd.split_feature = choice->feature;
    nd.split_value = choice->value;
    nd.left = left_id;
    nd.right = right_id;
    ++leaves;
    queue.push_back({left_id, std::move(left_rows)});
    queue.push_back({right_id, std::move(right_rows)});
  }

  tree.finalize_leaves();
  return tree;
}

LeafEstimate estimate_leaves(const TreeStructure& structure, const Dataset& data,
                             std::span<const std::uint32_t> estimate_rows) {
  if (estimate_rows.empty()) {
    throw InvalidInputError("estimate_leaves: empty estimation sample");
  }
  const std::size_t n_nodes = structure.nodes.size();
  std::vector<double> node_sum(n_nodes, 0.0);
  std::vector<std::uint32_t> node_count(n_nodes, 0);

  for (std::uint32_t r : estimate_rows) {
    const double v = data.y(r);
    std::int32_t node = 0;
    for (;;) {
      node_sum[node] += v;
      ++node_count[node];
      const TreeNode& nd = structure.nodes[node];
      if (nd.is_leaf()) break;
      node = data.x(r, nd.split_feature) <= nd.split_value ? nd.left : nd.right;
    }
  }

  const std::vector<std::int32_t> parent = structure.parents();
  LeafEstimate est;
  est.values.resize(structure.leaf_count);
  est.counts.resize(structure.leaf_count);
  for (std::size_t i = 0; i < n_nodes; ++i) {
    const std::int32_t leaf = structure.leaf_ordinal[i];
    if (leaf < 0) continue;
    est.counts[leaf] = node_count[i];
    std::int32_t node = static_cast<std::int32_t>(i);
    while (node_count[node] == 0) node = parent[node];  // root count > 0
    est.values[leaf] = node_sum[node] / static_cast<double>(node_count[node]);
  }
  return est;
}

double HonestTree::predict(std::span<const double> x) const {
  for (double v : x) {
    if (!std::isfinite(v)) throw InvalidInputError("predict: non-finite feature value");
  }
  return leaf_values[structure.leaf_of(x)];
}

double HonestTree::predict_row(const Dataset& data, std::size_t row) const {
  return leaf_values[structure.leaf_of_row(data, row)];
}

double tree_sse(const HonestTree& tree, const Dataset& data) {
  double sse = 0.0;
  for (std::size_t r = 0; r < data.n_rows; ++r) {
    const double d = data.y(r) - tree.predict_row(data, r);
    sse += d * d;
  }
  return sse;
}

}  // namespace fidforest
