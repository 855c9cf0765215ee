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

#include "fidforest/fiducial.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>

#include "fidforest/errors.hpp"
#include "fidforest/parallel.hpp"

namespace fidforest {

double log_weight(std::size_t n, std::size_t l, double sse, double sse_floor) {
  if (n < l + 3) {
    throw NumericError("log_weight: requires n - l - 1 >= 2");
  }
  if (!(sse > sse_floor) || !(sse > 0.0)) {
    throw NumericError("log_weight: degenerate fit (sse at or below floor)");
  }
  const double nd = static_cast<double>(n);
  const double ld = static_cast<double>(l);
  const double half_resid = 0.5 * (nd - ld);
  return std::lgamma(half_resid - 0.5) - 0.5 * ld * std::log(nd) -
         (half_resid - 1.0) * std::log(sse) -
         half_resid * std::log(std::numbers::pi);
}

std::vector<double> normalize_weights(std::span<const double> log_weights) {
  if (log_weights.empty()) {
    throw InvalidInputError("normalize_weights: empty input");
  }
  double max_lw = -std::numeric_limits<double>::infinity();
  for (double lw : log_weights) {
    if (!std::isfinite(lw)) throw InvalidInputError("normalize_weights: non-finite input");
    max_lw = std::max(max_lw, lw);
  }
  std::vector<double> out(log_weights.size());
  double total = 0.0;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    out[i] = std::exp(log_weights[i] - max_lw);
    total += out[i];
  }
  for (double& w : out) w /= total;
  return out;
}

double sse_floor(const Dataset& data) {
  return 1e-12 * static_cast<double>(data.n_rows) *
         std::max(response_variance(data), 1e-30);
}

FiducialWeights compute_weights(HonestForest& forest, const Dataset& data) {
  if (forest.trees.empty()) throw InvalidInputError("compute_weights: empty forest");
  const std::size_t n = data.n_rows;
  const double floor = sse_floor(data);

  FiducialWeights fw;
  for (std::size_t t = 0; t < forest.trees.size(); ++t) {
    HonestTree& tree = forest.trees[t];
    const std::size_t l = static_cast<std::size_t>(tree.structure.leaf_count);
    if (n < l + 3) {
      tree.log_weight = std::numeric_limits<double>::quiet_NaN();
      ++fw.excluded_dof;
      continue;
    }
    if (!(tree.sse > floor)) {
      tree.log_weight = std::numeric_limits<double>::quiet_NaN();
      ++fw.excluded_degenerate;
      continue;
    }
    tree.log_weight = log_weight(n, l, tree.sse, floor);
    fw.tree_indices.push_back(t);
    fw.log_weights.push_back(tree.log_weight);
  }
  if (fw.tree_indices.empty()) {
    throw NumericError("compute_weights: no weight-eligible tree in the forest");
  }
  if (fw.excluded_degenerate + fw.excluded_dof > 0) {
    std::cerr << "warning: excluded " << fw.excluded_degenerate
              << " degenerate-fit and " << fw.excluded_dof
              << " low-dof trees from the fiducial ensemble\n";
  }
  fw.weights = normalize_weights(fw.log_weights);
  return fw;
}

double draw_sigma(RandomStream& stream, double sse, std::size_t n, std::size_t l) {
  if (n < l + 3) throw NumericError("draw_sigma: requires n - l >= 3");
  if (!(sse > 0.0)) throw NumericError("draw_sigma: sse must be positive");
  const double c = stream.chi_square(static_cast<std::uint32_t>(n - l));
  return std::sqrt(sse / c);
}

std::vector<double> resample_leaves(const HonestTree& tree, const Dataset& data,
                                    double sigma, RandomStream& stream) {
  const std::size_t n = data.n_rows;
  const std::uint32_t m = static_cast<std::uint32_t>(n / 4);

  std::vector<bool> grown(n, false);
  for (std::uint32_t r : tree.grow_rows) grown[r] = true;
  std::vector<std::uint32_t> pool;
  pool.reserve(n - tree.grow_rows.size());
  for (std::uint32_t r = 0; r < n; ++r) {
    if (!grown[r]) pool.push_back(r);
  }
  if (pool.size() < m) {
    throw DataError("resample_leaves: pool smaller than floor(n/4)");
  }

  const std::vector<std::uint32_t> pick =
      stream.sample_without_replacement(static_cast<std::uint32_t>(pool.size()), m);
  std::vector<std::uint32_t> drawn(m);
  for (std::uint32_t i = 0; i < m; ++i) drawn[i] = pool[pick[i]];

  LeafEstimate est = estimate_leaves(tree.structure, data, drawn);
  for (double& v : est.values) v += sigma * stream.normal();  // one z per leaf
  return est.values;
}

FiducialEnsemble::FiducialEnsemble(std::shared_ptr<const HonestForest> forest,
                                   std::vector<FiducialDraw> draws,
                                   FiducialWeights weights)
    : forest_(std::move(forest)), draws_(std::move(draws)), weights_(std::move(weights)) {}

double FiducialEnsemble::draw_prediction(std::size_t d, std::span<const double> x) const {
  const FiducialDraw& draw = draws_[d];
  const TreeStructure& structure = forest_->trees[draw.tree_index].structure;
  return draw.leaf_values[structure.leaf_of(x)];
}

std::vector<double> FiducialEnsemble::predictions(std::span<const double> x) const {
  for (double v : x) {
    if (!std::isfinite(v)) throw InvalidInputError("predictions: non-finite feature value");
  }
  std::vector<double> out(draws_.size());
  for (std::size_t d = 0; d < draws_.size(); ++d) out[d] = draw_prediction(d, x);
  return out;
}

std::vector<double> FiducialEnsemble::sigmas() const {
  std::vector<double> out(draws_.size());
  for (std::size_t d = 0; d < draws_.size(); ++d) out[d] = draws_[d].sigma;
  return out;
}

FiducialEnsemble generate_ensemble(std::shared_ptr<HonestForest> forest,
                                   const Dataset& data, std::size_t n_draws,
                                   const RandomStream& base_stream, unsigned n_threads) {
  if (!forest || forest->trees.empty()) {
    throw InvalidInputError("generate_ensemble: empty forest");
  }
  if (n_draws < 1) throw InvalidInputError("generate_ensemble: need n_draws >= 1");

  FiducialWeights weights = compute_weights(*forest, data);
  const std::size_t n = data.n_rows;

  std::vector<FiducialDraw> draws(n_draws);
  const HonestForest& f = *forest;
  parallel_for(n_draws, n_threads, [&](std::size_t i) {
    RandomStream stream = base_stream.child(static_cast<std::uint32_t>(i));
    FiducialDraw draw;
    const std::size_t pick = stream.sample_categorical(weights.weights);
    draw.tree_index = weights.tree_indices[pick];
    const HonestTree& tree = f.trees[draw.tree_index];
    const std::size_t l = static_cast<std::size_t>(tree.structure.leaf_count);
    draw.sigma = draw_sigma(stream, tree.sse, n, l);
    draw.leaf_values = resample_leaves(tree, data, draw.sigma, stream);
    draws[i] = std::move(draw);
  });

  return FiducialEnsemble(std::move(forest), std::move(draws), std::move(weights));
}

double percentile(std::span<const double> values, double q) {
  if (values.empty()) throw InvalidInputError("percentile: empty sample");
  if (!(q >= 0.0) || !(q <= 1.0)) throw InvalidInputError("percentile: q outside [0, 1]");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  const double h = (static_cast<double>(m) - 1.0) * q;  // 0-based rank
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= m) return sorted[m - 1];
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

namespace {

Interval percentile_interval(std::vector<double> values, double level) {
  if (!(level > 0.0) || !(level < 1.0)) {
    throw InvalidInputError("interval: level must be in (0, 1)");
  }
  const double alpha = 1.0 - level;
  Interval iv;
  iv.level = level;
  iv.lower = percentile(values, alpha / 2.0);
  iv.upper = percentile(values, 1.0 - alpha / 2.0);
  return iv;
}

}  // namespace

double point_estimate(const FiducialEnsemble& ensemble, std::span<const double> x) {
  if (ensemble.size() == 0) throw InvalidInputError("point_estimate: empty ensemble");
  const std::vector<double> preds = ensemble.predictions(x);
  double sum = 0.0;
  for (double p : preds) sum += p;
  return sum / static_cast<double>(preds.size());
}

Interval confidence_interval(const FiducialEnsemble& ensemble, std::span<const double> x,
                             double level) {
  return percentile_interval(ensemble.predictions(x), level);
}

Interval prediction_interval(const FiducialEnsemble& ensemble, std::span<const double> x,
                             double level, RandomStream& stream) {
  std::vector<double> values = ensemble.predictions(x);
  for (std::size_t d = 0; d < values.size(); ++d) {
    values[d] += ensemble.draws()[d].sigma * stream.normal();
  }
  return percentile_interval(std::move(values), level);
}

Interval sigma_interval(const FiducialEnsemble& ensemble, double level) {
  if (ensemble.size() == 0) throw InvalidInputError("sigma_interval: empty ensemble");
  return percentile_interval(ensemble.sigmas(), level);
}

}  // namespace fidforest
