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

#ifndef FIDFOREST_EXPERIMENTS_HPP
#define FIDFOREST_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fidforest/fiducial.hpp"

namespace fidforest {

enum class TestFunction { kCosine, kXor, kAnd };

TestFunction parse_test_function(std::string_view name);  // "cosine"|"xor"|"and"
const char* test_function_name(TestFunction fn);
std::size_t active_dimension(TestFunction fn);  // cosine: 2, xor: 4, and: 4
double evaluate_test_function(TestFunction fn, std::span<const double> x);

/// One simulation configuration (a row of the coverage studies).
struct SimConfig {
  TestFunction function = TestFunction::kCosine;
  std::size_t n = 200;
  std::size_t p = 2;
  double sigma = 1.0;
  std::size_t reps = 200;
  double level = 0.95;
  ForestParams forest{.n_trees = 500};
  std::size_t n_draws = 500;  // fiducial sample size M
  std::uint64_t master_seed = 0;
  unsigned threads = 1;

  void validate() const;
};

/// One synthetic repetition: training data plus an independent probe
/// point with its true conditional mean and one future response.
struct SimulatedRep {
  Dataset train;
  std::vector<double> probe_x;
  double probe_f = 0.0;  // f(x*)
  double probe_y = 0.0;  // y* = f(x*) + sigma * z*
};

SimulatedRep generate_dataset(const SimConfig& config, std::uint32_t rep_index);

struct CoverageRecord {
  std::string target;  // "conditional-mean" | "sigma" | "future-response"
  double level = 0.0;
  double coverage = 0.0;    // over completed reps
  double mean_width = 0.0;  // over completed reps
  double mc_stderr = 0.0;   // sqrt(c (1-c) / reps)
  std::size_t reps_total = 0;
  std::size_t reps_failed = 0;
};

struct CoverageReport {
  SimConfig config;
  std::vector<CoverageRecord> records;  // conditional-mean, sigma, future-response
  std::int64_t runtime_ms = -1;         // negative = not measured
};

/// Per rep: simulate, train an honest forest, generate the fiducial
/// ensemble and record interval containment/width for the conditional
/// mean, sigma, and the future response.  Reps that fail with a numeric
/// error are skipped and counted.
CoverageReport run_coverage_experiment(const SimConfig& config, bool measure_runtime = false);

struct SigmaHistogram {
  SimConfig config;
  std::vector<double> bin_edges;       // size bins + 1
  std::vector<std::size_t> counts;     // size bins; sums to M
  double mean = 0.0;
  double sd = 0.0;
};

/// One run of the full pipeline; bins the M sigma draws.
SigmaHistogram sigma_histogram(const SimConfig& config, std::size_t n_bins = 30);

/// Hand-built candidate family for the weight-concentration study on the
/// AND function (p = 5): minimal true trees, true trees with extra
/// spurious splits, and wrong trees with misplaced splits.
struct CandidateFamily {
  std::vector<TreeStructure> trees;
  std::vector<bool> minimal_true;  // parallel to trees
};

CandidateFamily and_candidate_family();

struct ConcentrationTrace {
  std::vector<std::size_t> sample_sizes;
  std::vector<double> minimal_true_mass;  // total weight on minimal true trees
  std::size_t candidate_count = 0;
  std::size_t minimal_true_count = 0;
};

/// For each n: simulate AND data, fit every candidate's leaf values by
/// full-sample within-leaf means, compute normalized fiducial weights and
/// record the total mass on the minimal true trees.
ConcentrationTrace theorem1_concentration(std::span<const std::size_t> sample_sizes,
                                          std::uint64_t seed);

}  // namespace fidforest

#endif  // FIDFOREST_EXPERIMENTS_HPP
