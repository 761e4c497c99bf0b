/*
 * Copyright 2026 The fakescope Authors.
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

// Portable deterministic randomness.
//
// std::mt19937_64 has a fully specified output sequence, but the standard
// distributions do not, so every draw used by the toolkit goes through the
// helpers below. Seeds for independent tasks (folds, trees, grid cells) are
// derived from the master seed by hashing a task path, which keeps results
// independent of scheduling.

#ifndef FAKESCOPE_RANDOM_H_
#define FAKESCOPE_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace fakescope {

std::uint64_t SplitMix64(std::uint64_t x);

// FNV-1a 64-bit.
std::uint64_t HashString(std::string_view text);

std::uint64_t DeriveSeed(std::uint64_t master,
                         std::initializer_list<std::uint64_t> path);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(SplitMix64(seed)) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform in [0, n). n must be positive.
  std::uint64_t UniformInt(std::uint64_t n);

  bool Bernoulli(double p) { return Uniform() < p; }

  double Normal();
  double Normal(double mean, double stddev) { return mean + stddev * Normal(); }

  // exp(N(mu, sigma^2)).
  double LogNormal(double mu, double sigma);

  // Index drawn proportionally to non-negative weights.
  std::size_t Categorical(std::span<const double> weights);

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(UniformInt(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fakescope

#endif  // FAKESCOPE_RANDOM_H_
