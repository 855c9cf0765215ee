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

#include "fidforest/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>

#include "fidforest/errors.hpp"
#include "fidforest/parallel.hpp"

namespace fidforest {

TestFunction parse_test_function(std::string_view name) {
  if (name == "cosine") return TestFunction::kCosine;
  if (name == "xor") return TestFunction::kXor;
  if (name == "and") return TestFunction::kAnd;
  throw InvalidInputError("unknown test function: " + std::string(name));
}

const char* test_function_name(TestFunction fn) {
  switch (fn) {
    case TestFunction::kCosine: return "cosine";
    case TestFunction::kXor: return "xor";
    case TestFunction::kAnd: return "and";
  }
  return "?";
}

std::size_t active_dimension(TestFunction fn) {
  return fn == TestFunction::kCosine ? 2 : 4;
}

double evaluate_test_function(TestFunction fn, std::span<const double> x) {
  if (x.size() < active_dimension(fn)) {
    throw InvalidInputError("test function: input dimension too small");
  }
  switch (fn) {
    case TestFunction::kCosine:
      return 3.0 * std::cos(std::numbers::pi * (x[0] + x[1]));
    case TestFunction::kXor:
      return 5.0 * ((x[0] > 0.6) != (x[1] > 0.6)) +
             1.0 * ((x[2] > 0.6) != (x[3] > 0.6));
    case TestFunction::kAnd:
      return 10.0 * ((x[0] > 0.3) && (x[1] > 0.3) && (x[2] > 0.3) && (x[3] > 0.3));
  }
  throw InvalidInputError("test function: bad enum value");
}

void SimConfig::validate() const {
  if (p < active_dimension(function)) {
    throw InvalidInputError("sim config: p below the function's active dimension");
  }
  if (n < 8) throw InvalidInputError("sim config: n must be >= 8");
  if (reps < 1) throw InvalidInputError("sim config: reps must be >= 1");
  if (!(level > 0.0) || !(level < 1.0)) {
    throw InvalidInputError("sim config: level must be in (0, 1)");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidInputError("sim config: sigma must be finite and >= 0");
  }
  if (n_draws < 1) throw InvalidInputError("sim config: draws must be >= 1");
}

SimulatedRep generate_dataset(const SimConfig& config, std::uint32_t rep_index) {
  config.validate();
  RandomStream stream(config.master_seed, {stream_label::kSimulation, rep_index});

  const std::size_t n = config.n, p = config.p;
  std::vector<double> features(n * p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      features[j * n + i] = stream.uniform01();
    }
  }
  SimulatedRep rep;
  std::vector<double> response(n);
  std::vector<double> xi(p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < p; ++j) xi[j] = features[j * n + i];
    response[i] = evaluate_test_function(config.function, xi) +
                  config.sigma * stream.normal();
  }
  rep.train = make_dataset(n, p, std::move(features), std::move(response));

  rep.probe_x.resize(p);
  for (std::size_t j = 0; j < p; ++j) rep.probe_x[j] = stream.uniform01();
  rep.probe_f = evaluate_test_function(config.function, rep.probe_x);
  rep.probe_y = rep.probe_f + config.sigma * stream.normal();
  return rep;
}

CoverageReport run_coverage_experiment(const SimConfig& config, bool measure_runtime) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  struct Outcome {
    bool ok = false;
    bool cover_mean = false, cover_sigma = false, cover_future = false;
    double width_mean = 0.0, width_sigma = 0.0, width_future = 0.0;
  };
  std::vector<Outcome> outcomes(config.reps);

  parallel_for(config.reps, config.threads, [&](std::size_t r) {
    Outcome& out = outcomes[r];
    try {
      const auto rep = generate_dataset(config, static_cast<std::uint32_t>(r));
      auto forest = std::make_shared<HonestForest>(train_forest(
          rep.train, config.forest,
          RandomStream(config.master_seed,
                       {stream_label::kTraining, static_cast<std::uint32_t>(r)}),
          1));
      const FiducialEnsemble ensemble = generate_ensemble(
          std::move(forest), rep.train, config.n_draws,
          RandomStream(config.master_seed,
                       {stream_label::kEnsemble, static_cast<std::uint32_t>(r)}),
          1);

      const Interval ci = confidence_interval(ensemble, rep.probe_x, config.level);
      const Interval si = sigma_interval(ensemble, config.level);
      RandomStream pi_stream(config.master_seed, {stream_label::kPredictionNoise,
                                                  static_cast<std::uint32_t>(r)});
      const Interval pi =
          prediction_interval(ensemble, rep.probe_x, config.level, pi_stream);

      out.cover_mean = ci.contains(rep.probe_f);
      out.cover_sigma = si.contains(config.sigma);
      out.cover_future = pi.contains(rep.probe_y);
      out.width_mean = ci.width();
      out.width_sigma = si.width();
      out.width_future = pi.width();
      out.ok = true;
    } catch (const NumericError&) {
      out.ok = false;  // skipped rep, reported in the record
    }
  });

  std::size_t done = 0;
  std::size_t hits[3] = {0, 0, 0};
  double widths[3] = {0.0, 0.0, 0.0};
  for (const Outcome& out : outcomes) {
    if (!out.ok) continue;
    ++done;
    hits[0] += out.cover_mean ? 1 : 0;
    hits[1] += out.cover_sigma ? 1 : 0;
    hits[2] += out.cover_future ? 1 : 0;
    widths[0] += out.width_mean;
    widths[1] += out.width_sigma;
    widths[2] += out.width_future;
  }
  if (done == 0) throw NumericError("coverage experiment: every repetition failed");

  CoverageReport report;
  report.config = config;
  const char* targets[3] = {"conditional-mean", "sigma", "future-response"};
  for (int k = 0; k < 3; ++k) {
    CoverageRecord rec;
    rec.target = targets[k];
    rec.level = config.level;
    rec.coverage = static_cast<double>(hits[k]) / static_cast<double>(done);
    rec.mean_width = widths[k] / static_cast<double>(done);
    rec.mc_stderr =
        std::sqrt(rec.coverage * (1.0 - rec.coverage) / static_cast<double>(done));
    rec.reps_total = config.reps;
    rec.reps_failed = config.reps - done;
    report.records.push_back(std::move(rec));
  }
  if (measure_runtime) {
    report.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
  }
  return report;
}

SigmaHistogram sigma_histogram(const SimConfig& config, std::size_t n_bins) {
  config.validate();
  if (n_bins < 1) throw InvalidInputError("sigma_histogram: need at least one bin");

  const auto rep = generate_dataset(config, 0);
  auto forest = std::make_shared<HonestForest>(
      train_forest(rep.train, config.forest,
                   RandomStream(config.master_seed, {stream_label::kTraining, 0}),
                   config.threads));
  const FiducialEnsemble ensemble = generate_ensemble(
      std::move(forest), rep.train, config.n_draws,
      RandomStream(config.master_seed, {stream_label::kEnsemble, 0}), config.threads);

  const std::vector<double> sig = ensemble.sigmas();
  double lo = sig[0], hi = sig[0], sum = 0.0;
  for (double s : sig) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    sum += s;
  }
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }

  SigmaHistogram hist;
  hist.config = config;
  hist.mean = sum / static_cast<double>(sig.size());
  double ss = 0.0;
  for (double s : sig) ss += (s - hist.mean) * (s - hist.mean);
  hist.sd = sig.size() > 1 ? std::sqrt(ss / static_cast<double>(sig.size() - 1)) : 0.0;

  hist.bin_edges.resize(n_bins + 1);
  for (std::size_t b = 0; b <= n_bins; ++b) {
    hist.bin_edges[b] =
        lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(n_bins);
  }
  hist.counts.assign(n_bins, 0);
  for (double s : sig) {
    auto b = static_cast<std::size_t>((s - lo) / (hi - lo) * static_cast<double>(n_bins));
    if (b >= n_bins) b = n_bins - 1;
    ++hist.counts[b];
  }
  return hist;
}

namespace {

TreeStructure chain_tree(const std::vector<std::pair<std::int32_t, double>>& splits) {
  TreeStructure tree;
  tree.nodes.emplace_back();
  std::int32_t current = 0;
  for (const auto& [feature, value] : splits) {
    const std::int32_t left = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    const std::int32_t right = static_cast<std::int32_t>(tree.nodes.size());
    tree.nodes.emplace_back();
    tree.nodes[current] = TreeNode{feature, value, left, right};
    current = right;
  }
  tree.finalize_leaves();
  return tree;
}

// Turn leaf `node` into an internal node with two fresh leaves.
void split_leaf(TreeStructure& tree, std::int32_t node, std::int32_t feature,
                double value) {
  const std::int32_t left = static_cast<std::int32_t>(tree.nodes.size());
  tree.nodes.emplace_back();
  const std::int32_t right = static_cast<std::int32_t>(tree.nodes.size());
  tree.nodes.emplace_back();
  tree.nodes[node] = TreeNode{feature, value, left, right};
  tree.finalize_leaves();
}

}  // namespace

CandidateFamily and_candidate_family() {
  CandidateFamily family;
  const double t = 0.3;

  // Minimal true trees: the AND chain in two split orders (5 leaves each).
  family.trees.push_back(chain_tree({{0, t}, {1, t}, {2, t}, {3, t}}));
  family.minimal_true.push_back(true);
  family.trees.push_back(chain_tree({{3, t}, {2, t}, {1, t}, {0, t}}));
  family.minimal_true.push_back(true);

  // True trees with three extra spurious splits (8 leaves): every added
  // split subdivides a region where the target is constant.
  {
    TreeStructure tr = chain_tree({{0, t}, {1, t}, {2, t}, {3, t}});
    split_leaf(tr, 8, 4, 0.5);    // all-pass leaf
    split_leaf(tr, 9, 0, 0.65);
    split_leaf(tr, 10, 1, 0.6);
    family.trees.push_back(std::move(tr));
    family.minimal_true.push_back(false);
  }
  {
    TreeStructure tr = chain_tree({{3, t}, {2, t}, {1, t}, {0, t}});
    split_leaf(tr, 1, 0, 0.5);    // first "fail" leaf
    split_leaf(tr, 9, 1, 0.4);
    split_leaf(tr, 10, 2, 0.7);
    family.trees.push_back(std::move(tr));
    family.minimal_true.push_back(false);
  }

  // Wrong trees: misplaced thresholds or missing splits.
  family.trees.push_back(chain_tree({{0, 0.4}, {1, 0.4}, {2, 0.4}, {3, 0.4}}));
  family.minimal_true.push_back(false);
  family.trees.push_back(chain_tree({{0, 0.2}, {1, 0.2}, {2, 0.2}, {3, 0.2}}));
  family.minimal_true.push_back(false);
  family.trees.push_back(chain_tree({{0, t}, {1, t}, {2, t}}));
  family.minimal_true.push_back(false);
  family.trees.push_back(chain_tree({{0, t}}));
  family.minimal_true.push_back(false);

  return family;
}

ConcentrationTrace theorem1_concentration(std::span<const std::size_t> sample_sizes,
                                          std::uint64_t seed) {
  if (sample_sizes.empty()) {
    throw InvalidInputError("concentration: need at least one sample size");
  }
  for (std::size_t i = 1; i < sample_sizes.size(); ++i) {
    if (sample_sizes[i] <= sample_sizes[i - 1]) {
      throw InvalidInputError("concentration: sample sizes must be increasing");
    }
  }

  const CandidateFamily family = and_candidate_family();
  ConcentrationTrace trace;
  trace.sample_sizes.assign(sample_sizes.begin(), sample_sizes.end());
  trace.candidate_count = family.trees.size();
  for (bool flag : family.minimal_true) {
    trace.minimal_true_count += flag ? 1 : 0;
  }

  for (std::size_t idx = 0; idx < trace.sample_sizes.size(); ++idx) {
    const std::size_t n = trace.sample_sizes[idx];
    SimConfig cfg;
    cfg.function = TestFunction::kAnd;
    cfg.n = n;
    cfg.p = 5;
    cfg.sigma = 1.0;
    cfg.master_seed = seed;
    const SimulatedRep rep = generate_dataset(cfg, static_cast<std::uint32_t>(idx));

    std::vector<std::uint32_t> all_rows(n);
    for (std::size_t r = 0; r < n; ++r) all_rows[r] = static_cast<std::uint32_t>(r);
    const double floor = sse_floor(rep.train);

    std::vector<double> log_weights;
    std::vector<std::size_t> owners;
    for (std::size_t c = 0; c < family.trees.size(); ++c) {
      const TreeStructure& structure = family.trees[c];
      const std::size_t l = static_cast<std::size_t>(structure.leaf_count);
      if (n < l + 3) continue;
      HonestTree tree;
      tree.structure = structure;
      LeafEstimate est = estimate_leaves(structure, rep.train, all_rows);
      tree.leaf_values = std::move(est.values);
      tree.leaf_counts = std::move(est.counts);
      const double sse = tree_sse(tree, rep.train);
      if (!(sse > floor)) continue;
      log_weights.push_back(log_weight(n, l, sse, floor));
      owners.push_back(c);
    }
    if (log_weights.empty()) {
      throw NumericError("concentration: no eligible candidate tree");
    }
    const std::vector<double> weights = normalize_weights(log_weights);
    double mass = 0.0;
    for (std::size_t k = 0; k < owners.size(); ++k) {
      if (family.minimal_true[owners[k]]) mass += weights[k];
    }
    trace.minimal_true_mass.push_back(mass);
  }
  return trace;
}

}  // namespace fidforest
