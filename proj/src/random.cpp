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

#include "fidforest/random.hpp"

#include <cmath>
#include <numbers>

#include "fidforest/errors.hpp"

namespace fidforest {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer (Steele, Lea & Flood / Vigna).
inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

}  // namespace

RandomStream::RandomStream(std::uint64_t master_seed, std::span<const std::uint32_t> path)
    : key_{master_seed, {path.begin(), path.end()}} {
  reset_state();
}

RandomStream::RandomStream(std::uint64_t master_seed,
                           std::initializer_list<std::uint32_t> path)
    : key_{master_seed, {path.begin(), path.end()}} {
  reset_state();
}

RandomStream::RandomStream(StreamKey key) : key_(std::move(key)) { reset_state(); }

void RandomStream::reset_state() {
  // Chain-hash the path into a 64-bit stream identity.
  base_ = mix64(key_.master_seed + kGolden);
  for (std::uint32_t label : key_.path) {
    base_ = mix64(base_ ^ (kGolden + label));
  }
  counter_ = 0;
}

RandomStream RandomStream::child(std::uint32_t label) const {
  StreamKey key = key_;
  key.path.push_back(label);
  return RandomStream(std::move(key));
}

std::uint64_t RandomStream::next_u64() {
  ++counter_;
  return mix64(base_ + counter_ * kGolden);
}

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform01_positive() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidInputError("uniform: invalid range [lo, hi)");
  }
  double v = lo + (hi - lo) * uniform01();
  if (v >= hi) v = std::nextafter(hi, lo);
  return v;
}

double RandomStream::normal() {
  const double u1 = uniform01_positive();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double RandomStream::gamma(double alpha) {
  if (alpha < 1.0) {
    // Boost the shape by one, then scale back (Marsaglia-Tsang, sec. 6).
    const double u = uniform01_positive();
    return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = uniform01_positive();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double RandomStream::chi_square(std::uint32_t dof) {
  if (dof < 1) throw InvalidInputError("chi_square: dof must be >= 1");
  return 2.0 * gamma(0.5 * static_cast<double>(dof));
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInputError("uniform_below: bound must be >= 1");
  // Lemire's unbiased multiply-shift rejection.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const unsigned __int128 m =
        static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(bound);
    if (static_cast<std::uint64_t>(m) >= threshold) {
      return static_cast<std::uint64_t>(m >> 64);
    }
  }
}

std::vector<std::uint32_t> RandomStream::sample_without_replacement(std::uint32_t population,
                                                                    std::uint32_t k) {
  if (k > population) {
    throw InvalidInputError("sample_without_replacement: k exceeds population");
  }
  std::vector<std::uint32_t> pool(population);
  for (std::uint32_t i = 0; i < population; ++i) pool[i] = i;
  // Partial Fisher-Yates: the first k slots are a uniform k-subset.
  for (std::uint32_t i = 0; i < k; ++i) {
    const std::uint32_t j =
        i + static_cast<std::uint32_t>(uniform_below(population - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

std::size_t RandomStream::sample_categorical(std::span<const double> weights) {
  if (weights.empty()) throw InvalidInputError("sample_categorical: empty weight vector");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw InvalidInputError("sample_categorical: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw InvalidInputError("sample_categorical: weights must sum to 1 within 1e-9");
  }
  const double u = uniform01() * total;
  double cum = 0.0;
  std::size_t last_positive = weights.size();
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cum += weights[i];
    last_positive = i;
    if (u <= cum) return i;  // boundary hits resolve to the lower index
  }
  return last_positive;
}

}  // namespace fidforest
