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

#ifndef FIDFOREST_FIDUCIAL_HPP
#define FIDFOREST_FIDUCIAL_HPP

#include <memory>
#include <span>
#include <vector>

#include "fidforest/forest.hpp"

namespace fidforest {

/// Log marginal weight of a tree with l leaves and the given SSE on n rows:
///   lgamma((n-l-1)/2) - (l/2) ln n - ((n-l)/2 - 1) ln sse - ((n-l)/2) ln pi
/// computed entirely in the log domain.  Requires n - l - 1 >= 2 and
/// sse > sse_floor.
double log_weight(std::size_t n, std::size_t l, double sse, double sse_floor = 0.0);

/// Softmax with max-subtraction; the result sums to 1 within 1e-9 and is
/// invariant under adding a constant to all inputs.
std::vector<double> normalize_weights(std::span<const double> log_weights);

/// Threshold below which a tree's fit is treated as degenerate:
/// 1e-12 * n * max(var(y), 1e-30).
double sse_floor(const Dataset& data);

/// Normalized tree probabilities over the weight-eligible subset of a
/// forest.  Trees violating the dof requirement or the SSE floor are
/// excluded (counted, not fatal).
struct FiducialWeights {
  std::vector<std::size_t> tree_indices;  // eligible trees, ascending
  std::vector<double> log_weights;        // parallel to tree_indices
  std::vector<double> weights;            // normalized, parallel
  std::size_t excluded_degenerate = 0;
  std::size_t excluded_dof = 0;
};

/// Computes weights for every eligible tree and writes each tree's
/// log_weight back into the forest (NaN for excluded trees).
/// Throws NumericError when no tree is eligible.
FiducialWeights compute_weights(HonestForest& forest, const Dataset& data);

/// sigma draw: sqrt(sse / c) with c ~ chi-square(n - l).
/// Requires n - l >= 3 and sse > 0.
double draw_sigma(RandomStream& stream, double sse, std::size_t n, std::size_t l);

/// Resampled leaf values: draws floor(n/4) rows without replacement from
/// the rows not used to grow the tree, takes per-leaf means (ancestor
/// fallback for empty leaves) and adds sigma * z with one standard normal
/// z per leaf.
std::vector<double> resample_leaves(const HonestTree& tree, const Dataset& data,
                                    double sigma, RandomStream& stream);

struct FiducialDraw {
  std::size_t tree_index = 0;        // into forest.trees
  std::vector<double> leaf_values;   // resampled values, length l(T)
  double sigma = 0.0;
};

/// M draws of (tree, resampled leaves, sigma) plus the tree weights.
class FiducialEnsemble {
 public:
  FiducialEnsemble() = default;
  FiducialEnsemble(std::shared_ptr<const HonestForest> forest,
                   std::vector<FiducialDraw> draws, FiducialWeights weights);

  const HonestForest& forest() const { return *forest_; }
  const std::vector<FiducialDraw>& draws() const { return draws_; }
  const FiducialWeights& weights() const { return weights_; }
  std::size_t size() const { return draws_.size(); }

  /// Prediction of draw d at x, using the draw's resampled leaf values.
  double draw_prediction(std::size_t d, std::span<const double> x) const;
  /// All M draw predictions at x.
  std::vector<double> predictions(std::span<const double> x) const;
  /// The M sigma values.
  std::vector<double> sigmas() const;

 private:
  std::shared_ptr<const HonestForest> forest_;
  std::vector<FiducialDraw> draws_;
  FiducialWeights weights_;
};

/// Runs the fiducial sampling loop: computes tree weights, then for each
/// draw i (stream = base.child(i)) picks a tree proportionally to its
/// weight, draws sigma, and resamples the leaf values.
FiducialEnsemble generate_ensemble(std::shared_ptr<HonestForest> forest,
                                   const Dataset& data, std::size_t n_draws,
                                   const RandomStream& base_stream,
                                   unsigned n_threads = 1);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.0;
  bool contains(double v) const { return lower <= v && v <= upper; }
  double width() const { return upper - lower; }
};

/// Linear-interpolation percentile at rank h = (m-1)q + 1 on the sorted
/// values (1-based; the common "type 7" rule).
double percentile(std::span<const double> values, double q);

/// Mean of the draw predictions at x.
double point_estimate(const FiducialEnsemble& ensemble, std::span<const double> x);

/// Percentile interval of the draw predictions at x.
Interval confidence_interval(const FiducialEnsemble& ensemble, std::span<const double> x,
                             double level);

/// Percentile interval of draw prediction + sigma * z, one fresh z per
/// draw taken from `stream`.
Interval prediction_interval(const FiducialEnsemble& ensemble, std::span<const double> x,
                             double level, RandomStream& stream);

/// Percentile interval of the sigma sample.
Interval sigma_interval(const FiducialEnsemble& ensemble, double level);

}  // namespace fidforest

#endif  // FIDFOREST_FIDUCIAL_HPP
