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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "fakescope/parallel.h"
#include "fakescope/random.h"
#include "fakescope/resample.h"
#include "model_state.h"

namespace fakescope::learn {
namespace {

constexpr double kMinBoostError = 1e-10;

std::vector<std::size_t> AllRows(std::size_t n) {
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

void FitTree(const features::FeatureMatrix& m, const TrainParams& params,
             std::uint64_t seed, ModelState& state) {
  TreeOptions options;
  options.min_leaf = params.min_leaf;
  options.max_depth = params.max_depth;
  if (params.prune.strategy == PruneStrategy::kReducedError) {
    const int folds = params.prune.folds;
    if (folds < 2 || static_cast<std::size_t>(folds) > m.rows()) {
      throw std::invalid_argument("reduced-error folds must be in [2, training size]");
    }
    const corpus::FoldPlan plan = corpus::StratifiedFolds(
        m.labels, static_cast<std::size_t>(folds), DeriveSeed(seed, {HashString("prune")}));
    const std::vector<std::size_t> grow = plan.TrainingRows(0);
    state.tree = PruneReducedError(GrowTree(m, grow, {}, options), m, plan.folds[0]);
    return;
  }
  state.tree = GrowTree(m, AllRows(m.rows()), {}, options);
  if (params.prune.strategy == PruneStrategy::kSubtreeRaising) {
    state.tree = PruneSubtreeRaising(state.tree, params.prune.confidence);
  }
}

std::size_t NonConstantFeatures(const features::FeatureMatrix& m,
                                std::span<const std::size_t> rows) {
  std::size_t count = 0;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    for (const std::size_t r : rows) {
      if (m.at(r, f) != m.at(rows[0], f)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

void FitForest(const features::FeatureMatrix& m, const TrainParams& params,
               std::uint64_t seed, ModelState& state) {
  if (params.trees < 1) throw std::invalid_argument("forest needs at least one tree");
  state.ensemble.resize(static_cast<std::size_t>(params.trees));
  ParallelFor(state.ensemble.size(), params.jobs, [&](std::size_t t) {
    const std::vector<std::size_t> sample = BootstrapSample(m.rows(), seed, t);
    TreeOptions options;
    options.min_leaf = params.forest_min_leaf;
    options.seed = ForestTreeSeed(seed, t);
    if (params.mtry > 0) {
      options.mtry = params.mtry;
    } else {
      const auto d = static_cast<double>(NonConstantFeatures(m, sample));
      options.mtry = std::max(1, static_cast<int>(std::ceil(std::sqrt(d))));
    }
    state.ensemble[t] = GrowTree(m, sample, {}, options);
  });
}

void FitBoost(const features::FeatureMatrix& m, const TrainParams& params,
              ModelState& state) {
  if (params.rounds < 1) throw std::invalid_argument("boosting needs at least one round");
  const std::size_t n = m.rows();
  const std::vector<std::size_t> rows = AllRows(n);
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  TreeOptions options;
  options.min_leaf = 1;
  options.max_depth = std::max(1, params.base_depth);
  std::vector<char> wrong(n);
  for (int round = 0; round < params.rounds; ++round) {
    DecisionTree learner = GrowTree(m, rows, w, options);
    double err = 0;
    for (std::size_t i = 0; i < n; ++i) {
      wrong[i] = learner.Classify(m.row(i)) != m.labels[i];
      if (wrong[i]) err += w[i];
    }
    if (err >= 0.5) {
      if (state.ensemble.empty()) {
        state.ensemble.push_back(std::move(learner));
        state.alphas.push_back(1.0);
      }
      break;
    }
    const double clipped = std::max(err, kMinBoostError);
    const double alpha = 0.5 * std::log((1.0 - clipped) / clipped);
    state.ensemble.push_back(std::move(learner));
    state.alphas.push_back(alpha);
    if (err <= kMinBoostError) break;
    double total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] *= std::exp(wrong[i] ? alpha : -alpha);
      total += w[i];
    }
    for (double& x : w) x /= total;
  }
}

void FitKnn(const features::FeatureMatrix& m, const TrainParams& params,
            ModelState& state) {
  if (params.k < 1) throw std::invalid_argument("k must be at least 1");
  const std::size_t d = m.cols();
  state.lo.assign(d, 0);
  state.range.assign(d, 0);
  for (std::size_t f = 0; f < d; ++f) {
    double lo = m.at(0, f), hi = m.at(0, f);
    for (std::size_t r = 1; r < m.rows(); ++r) {
      lo = std::min(lo, m.at(r, f));
      hi = std::max(hi, m.at(r, f));
    }
    state.lo[f] = lo;
    state.range[f] = hi - lo;
  }
  state.points.resize(m.values.size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t f = 0; f < d; ++f) {
      state.points[r * d + f] =
          state.range[f] > 0 ? (m.at(r, f) - state.lo[f]) / state.range[f] : 0.0;
    }
  }
  state.labels = m.labels;
}

void FitBayes(const features::FeatureMatrix& m, ModelState& state) {
  const std::size_t d = m.cols();
  double count[2] = {0, 0};
  for (const Label l : m.labels) count[IsFake(l)] += 1;
  const double n = count[0] + count[1];
  for (int c = 0; c < 2; ++c) {
    state.log_prior[c] = std::log(count[c] / n);
    state.p_one[c].assign(d, 0);
    state.mean[c].assign(d, 0);
    state.var[c].assign(d, 0);
  }
  state.boolean.assign(d, 1);
  double max_var = 0;
  for (std::size_t f = 0; f < d; ++f) {
    double total = 0;
    double sum[2] = {0, 0}, ones[2] = {0, 0};
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const double v = m.at(r, f);
      const int c = IsFake(m.labels[r]);
      if (v != 0.0 && v != 1.0) state.boolean[f] = 0;
      sum[c] += v;
      ones[c] += v == 1.0;
      total += v;
    }
    const double overall_mean = total / n;
    double overall_ss = 0, ss[2] = {0, 0};
    for (int c = 0; c < 2; ++c) state.mean[c][f] = sum[c] / count[c];
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const double v = m.at(r, f);
      const int c = IsFake(m.labels[r]);
      ss[c] += (v - state.mean[c][f]) * (v - state.mean[c][f]);
      overall_ss += (v - overall_mean) * (v - overall_mean);
    }
    max_var = std::max(max_var, overall_ss / n);
    for (int c = 0; c < 2; ++c) {
      state.var[c][f] = ss[c] / count[c];
      state.p_one[c][f] = (ones[c] + 1.0) / (count[c] + 2.0);
    }
  }
  const double smoothing = max_var > 0 ? 1e-9 * max_var : 1e-9;
  for (int c = 0; c < 2; ++c) {
    for (double& v : state.var[c]) v += smoothing;
  }
}

double Sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void FitLogistic(const features::FeatureMatrix& m, const TrainParams& params,
                 ModelState& state) {
  if (params.lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  const std::size_t n = m.rows(), d = m.cols();
  state.center.assign(d, 0);
  state.scale.assign(d, 1);
  for (std::size_t f = 0; f < d; ++f) {
    double s = 0;
    for (std::size_t r = 0; r < n; ++r) s += m.at(r, f);
    const double mean = s / static_cast<double>(n);
    double ss = 0;
    for (std::size_t r = 0; r < n; ++r) ss += (m.at(r, f) - mean) * (m.at(r, f) - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    state.center[f] = mean;
    state.scale[f] = sd > 0 ? sd : 1.0;
  }
  // Standardized design with a trailing bias column.
  const std::size_t p = d + 1;
  std::vector<double> z(n * p);
  std::vector<double> y(n);
  double frobenius = 0;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t f = 0; f < d; ++f) {
      z[r * p + f] = (m.at(r, f) - state.center[f]) / state.scale[f];
      frobenius += z[r * p + f] * z[r * p + f];
    }
    z[r * p + d] = 1.0;
    frobenius += 1.0;
    y[r] = IsFake(m.labels[r]) ? 1.0 : 0.0;
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  const double lipschitz = 0.25 * frobenius * inv_n + params.lambda;
  const double step = 1.0 / lipschitz;

  auto gradient = [&](const std::vector<double>& w, std::vector<double>& g) {
    std::fill(g.begin(), g.end(), 0.0);
    for (std::size_t r = 0; r < n; ++r) {
      const double* zr = &z[r * p];
      double s = 0;
      for (std::size_t j = 0; j < p; ++j) s += zr[j] * w[j];
      const double res = Sigmoid(s) - y[r];
      for (std::size_t j = 0; j < p; ++j) g[j] += res * zr[j];
    }
    for (std::size_t j = 0; j < p; ++j) g[j] *= inv_n;
    for (std::size_t j = 0; j < d; ++j) g[j] += params.lambda * w[j];
  };

  std::vector<double> x(p, 0.0), x_prev(p, 0.0), look(p, 0.0), g(p, 0.0);
  double t = 1.0;
  for (int it = 0; it < params.max_iterations; ++it) {
    const double t_next = (1.0 + std::sqrt(1.0 + 4.0 * t * t)) / 2.0;
    const double beta = (t - 1.0) / t_next;
    for (std::size_t j = 0; j < p; ++j) look[j] = x[j] + beta * (x[j] - x_prev[j]);
    gradient(look, g);
    double norm = 0;
    for (const double v : g) norm += v * v;
    if (std::sqrt(norm) < params.tolerance) {
      x = look;
      break;
    }
    x_prev = x;
    double progress = 0;
    for (std::size_t j = 0; j < p; ++j) {
      x[j] = look[j] - step * g[j];
      progress += g[j] * (x[j] - x_prev[j]);
    }
    // Gradient restart keeps the momentum from overshooting.
    t = progress > 0 ? 1.0 : t_next;
  }
  state.weights.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(d));
  state.bias = x[d];
}

}  // namespace

std::vector<std::size_t> BootstrapSample(std::size_t n, std::uint64_t seed,
                                         std::size_t tree) {
  Rng rng(DeriveSeed(seed, {tree, 0}));
  std::vector<std::size_t> rows(n);
  for (std::size_t& r : rows) r = static_cast<std::size_t>(rng.UniformInt(n));
  return rows;
}

std::uint64_t ForestTreeSeed(std::uint64_t seed, std::size_t tree) {
  return DeriveSeed(seed, {tree, 1});
}

ModelState FitState(Algorithm algorithm, const features::FeatureMatrix& m,
                    const TrainParams& params, std::uint64_t seed) {
  ModelState state;
  switch (algorithm) {
    case Algorithm::kDT: FitTree(m, params, seed, state); break;
    case Algorithm::kRF: FitForest(m, params, seed, state); break;
    case Algorithm::kAB: FitBoost(m, params, state); break;
    case Algorithm::kKNN: FitKnn(m, params, state); break;
    case Algorithm::kNB: FitBayes(m, state); break;
    case Algorithm::kLR: FitLogistic(m, params, state); break;
  }
  return state;
}

Prediction PredictWithState(Algorithm algorithm, const TrainParams& params,
                            const ModelState& state, std::span<const double> x) {
  double score = 0;
  switch (algorithm) {
    case Algorithm::kDT:
      score = state.tree.Score(x);
      break;
    case Algorithm::kRF: {
      for (const DecisionTree& t : state.ensemble) score += t.Score(x);
      score /= static_cast<double>(state.ensemble.size());
      break;
    }
    case Algorithm::kAB: {
      double margin = 0, total = 0;
      for (std::size_t i = 0; i < state.ensemble.size(); ++i) {
        const double h = IsFake(state.ensemble[i].Classify(x)) ? 1.0 : -1.0;
        margin += state.alphas[i] * h;
        total += state.alphas[i];
      }
      score = total > 0 ? (margin / total + 1.0) / 2.0 : 0.5;
      break;
    }
    case Algorithm::kKNN: {
      const std::size_t d = x.size();
      const std::size_t n = state.labels.size();
      std::vector<std::pair<double, std::size_t>> dist(n);
      for (std::size_t r = 0; r < n; ++r) {
        double s = 0;
        for (std::size_t f = 0; f < d; ++f) {
          const double v =
              state.range[f] > 0 ? (x[f] - state.lo[f]) / state.range[f] : 0.0;
          const double diff = v - state.points[r * d + f];
          s += diff * diff;
        }
        dist[r] = {s, r};
      }
      const std::size_t k = std::min(n, static_cast<std::size_t>(params.k));
      std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k),
                        dist.end());
      std::size_t votes = 0;
      for (std::size_t i = 0; i < k; ++i) votes += IsFake(state.labels[dist[i].second]);
      score = static_cast<double>(votes) / static_cast<double>(k);
      // Equal votes go to fake.
      return {2 * votes >= k ? Label::kFake : Label::kHuman, score};
    }
    case Algorithm::kNB: {
      double ll[2];
      for (int c = 0; c < 2; ++c) {
        ll[c] = state.log_prior[c];
        for (std::size_t f = 0; f < x.size(); ++f) {
          if (state.boolean[f]) {
            const double v = std::clamp(x[f], 0.0, 1.0);
            const double p1 = state.p_one[c][f];
            ll[c] += v * std::log(p1) + (1.0 - v) * std::log(1.0 - p1);
          } else {
            const double var = state.var[c][f];
            const double diff = x[f] - state.mean[c][f];
            ll[c] += -0.5 * std::log(2.0 * std::numbers::pi * var) - diff * diff / (2.0 * var);
          }
        }
      }
      const double top = std::max(ll[0], ll[1]);
      const double lse = top + std::log(std::exp(ll[0] - top) + std::exp(ll[1] - top));
      score = std::exp(ll[1] - lse);
      break;
    }
    case Algorithm::kLR: {
      double s = state.bias;
      for (std::size_t f = 0; f < x.size(); ++f) {
        s += state.weights[f] * (x[f] - state.center[f]) / state.scale[f];
      }
      score = Sigmoid(s);
      break;
    }
  }
  return {score >= 0.5 ? Label::kFake : Label::kHuman, score};
}

}  // namespace fakescope::learn
