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

#ifndef FIDFOREST_RANDOM_HPP
#define FIDFOREST_RANDOM_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace fidforest {

/// Identity of a random stream: a master seed plus an ordered list of
/// 32-bit labels (e.g. [phase, tree-index, draw-index]).  Identical keys
/// always reproduce identical variate sequences; distinct paths under one
/// seed yield statistically independent streams.
struct StreamKey {
  std::uint64_t master_seed = 0;
  std::vector<std::uint32_t> path;
};

/// Counter-based stream: the i-th raw output is a pure function of
/// (key, i), so replay and parallel use are both deterministic.  A stream
/// is single-owner; concurrent tasks must fork children with distinct
/// labels via child().
class RandomStream {
 public:
  RandomStream() { reset_state(); }
  RandomStream(std::uint64_t master_seed, std::span<const std::uint32_t> path);
  RandomStream(std::uint64_t master_seed, std::initializer_list<std::uint32_t> path);
  explicit RandomStream(StreamKey key);

  /// New stream whose path is this stream's path extended by `label`,
  /// with a fresh counter.  Does not consume from this stream.
  RandomStream child(std::uint32_t label) const;

  std::uint64_t next_u64();

  /// Uniform on [0, 1).
  double uniform01();
  /// Uniform on [lo, hi); requires lo < hi.
  double uniform(double lo, double hi);
  /// Standard normal (Box-Muller; consumes two raw draws).
  double normal();
  /// Chi-square with dof >= 1 via the Marsaglia-Tsang gamma sampler.
  double chi_square(std::uint32_t dof);
  /// Unbiased integer on [0, bound); requires bound >= 1.
  std::uint64_t uniform_below(std::uint64_t bound);
  /// k distinct indices in [0, population), every k-subset equally likely.
  std::vector<std::uint32_t> sample_without_replacement(std::uint32_t population,
                                                        std::uint32_t k);
  /// Index i with probability weights[i]; weights must be non-negative and
  /// sum to 1 within 1e-9.  Ties on cumulative boundaries resolve to the
  /// lower index.
  std::size_t sample_categorical(std::span<const double> weights);

  const StreamKey& key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  void reset_state();
  double uniform01_positive();  // (0, 1]
  double gamma(double alpha);

  StreamKey key_;
  std::uint64_t base_ = 0;     // digest of (seed, path)
  std::uint64_t counter_ = 0;  // raw draws consumed
};

// Stream path labels used across the library.  Fixing these here makes
// every workflow reproducible from (master_seed, documented path) alone.
namespace stream_label {
inline constexpr std::uint32_t kSimulation = 1;       // synthetic data per rep
inline constexpr std::uint32_t kTraining = 2;         // per-tree: [kTraining, tree]
inline constexpr std::uint32_t kEnsemble = 3;         // per-draw: [kEnsemble, draw]
inline constexpr std::uint32_t kPredictionNoise = 4;  // prediction-interval z draws
inline constexpr std::uint32_t kSplit = 5;            // train/test partition
}  // namespace stream_label

}  // namespace fidforest

#endif  // FIDFOREST_RANDOM_HPP
