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

// Trainable classifiers: entropy decision tree (with reduced-error and
// pessimistic pruning), random forest, AdaBoost.M1, k-nearest neighbors,
// naive Bayes and ridge logistic regression.

#ifndef FAKESCOPE_LEARN_H_
#define FAKESCOPE_LEARN_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakescope/common.h"
#include "fakescope/features.h"

namespace fakescope::learn {

enum class Algorithm { kDT, kRF, kAB, kKNN, kNB, kLR };

std::string_view AlgorithmName(Algorithm a);  // "dt", "rf", "ab", ...
Algorithm ParseAlgorithm(std::string_view text);
const std::vector<Algorithm>& AllAlgorithms();

enum class PruneStrategy { kNone, kReducedError, kSubtreeRaising };
std::string_view PruneStrategyName(PruneStrategy s);  // "none", ...
PruneStrategy ParsePruneStrategy(std::string_view text);

struct PruneOptions {
  PruneStrategy strategy = PruneStrategy::kNone;
  int folds = 3;             // reduced error: hold out 1/folds
  double confidence = 0.25;  // subtree raising

  bool operator==(const PruneOptions&) const = default;
};

struct TrainParams {
  // Decision tree.
  int min_leaf = 2;
  int max_depth = 0;  // 0 = unlimited
  PruneOptions prune;
  // Random forest.
  int trees = 100;
  int forest_min_leaf = 1;
  int mtry = 0;  // 0 = ceil(sqrt(non-constant features))
  // AdaBoost.
  int rounds = 50;
  int base_depth = 1;
  // k-NN.
  int k = 5;
  // Logistic regression.
  double lambda = 1e-3;
  int max_iterations = 10000;
  double tolerance = 1e-6;
  // Worker threads for forests; results do not depend on it.
  int jobs = 1;

  bool operator==(const TrainParams&) const = default;
};

// The parameters as a JSON object (the "params" record of a model file).
std::string TrainParamsJson(const TrainParams& params);

struct TreeNode {
  int feature = -1;  // -1 for leaves
  double threshold = 0;
  int left = -1;   // x[feature] <= threshold
  int right = -1;  // x[feature] > threshold
  double pos = 0;  // training weight of fakes reaching the node
  double neg = 0;
  std::int64_t samples = 0;

  bool is_leaf() const { return feature < 0; }
  double score() const { return pos + neg > 0 ? pos / (pos + neg) : 0.5; }
  bool operator==(const TreeNode&) const = default;
};

class DecisionTree {
 public:
  DecisionTree() : nodes_(1) {}
  // Node 0 is the root. Throws std::invalid_argument on a malformed layout.
  explicit DecisionTree(std::vector<TreeNode> nodes);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t LeafFor(std::span<const double> x) const;
  // Fraction of fake training weight at the leaf reached.
  double Score(std::span<const double> x) const;
  Label Classify(std::span<const double> x) const;

  bool operator==(const DecisionTree&) const = default;

 private:
  std::vector<TreeNode> nodes_;
};

struct TreeStats {
  int nodes = 1;
  int leaves = 1;
  int height = 1;  // levels; a single leaf has height 1
  bool operator==(const TreeStats&) const = default;
};

TreeStats ComputeTreeStats(const DecisionTree& tree);

struct TreeOptions {
  int min_leaf = 2;   // samples required on each side of a split
  int max_depth = 0;  // 0 = unlimited
  // Features tried per node; 0 tries all of them. Candidates are the
  // features with the smallest pseudo-random priority, which is keyed by
  // (seed, node, feature name).
  int mtry = 0;
  std::uint64_t seed = 0;
};

// Grows an entropy tree on the given sample rows of `m` (duplicates count
// separately) with optional per-sample weights. A split must beat the
// current best gain by more than 1e-12; ties keep the lowest feature index,
// then the lowest threshold. Thresholds are midpoints between consecutive
// distinct values.
DecisionTree GrowTree(const features::FeatureMatrix& m,
                      std::span<const std::size_t> samples,
                      std::span<const double> weights, const TreeOptions& options);

// Bottom-up: a subtree becomes a leaf when the leaf makes no more errors on
// the held-out rows than the subtree does.
DecisionTree PruneReducedError(const DecisionTree& tree,
                               const features::FeatureMatrix& m,
                               std::span<const std::size_t> holdout);

// Bottom-up with the C4.5 upper-confidence error estimate; a subtree becomes
// its majority leaf when that estimate is no worse.
DecisionTree PruneSubtreeRaising(const DecisionTree& tree, double confidence);

// Estimated extra errors at a leaf with `n` samples and `e` errors.
double PessimisticExtraErrors(double n, double e, double confidence);

// Reduced error holds out a seeded stratified 1/folds of `training`.
// Throws std::invalid_argument when folds exceed the training size.
DecisionTree Prune(const DecisionTree& tree, const features::FeatureMatrix& training,
                   const PruneOptions& options, std::uint64_t seed);

// Row indices drawn with replacement for forest tree `tree` (n draws).
std::vector<std::size_t> BootstrapSample(std::size_t n, std::uint64_t seed,
                                         std::size_t tree);

// Feature-priority seed of forest tree `tree`.
std::uint64_t ForestTreeSeed(std::uint64_t seed, std::size_t tree);

struct Prediction {
  Label label = Label::kHuman;
  double score = 0;  // in [0, 1], larger means more likely fake
};

struct ModelState;

class TrainedModel {
 public:
  TrainedModel(Algorithm algorithm, TrainParams params,
               std::vector<std::string> features, std::uint64_t seed,
               std::shared_ptr<const ModelState> state);

  Algorithm algorithm() const { return algorithm_; }
  const TrainParams& params() const { return params_; }
  const std::vector<std::string>& features() const { return features_; }
  std::uint64_t seed() const { return seed_; }

  // Throws std::invalid_argument on a dimension mismatch.
  Prediction Predict(std::span<const double> x) const;
  // Columns must carry the training feature names in order.
  std::vector<Prediction> PredictAll(const features::FeatureMatrix& m) const;

  // The decision tree of a DT model; throws for other algorithms.
  const DecisionTree& tree() const;
  // Trees of an RF model, or base learners of an AB model.
  const std::vector<DecisionTree>& ensemble() const;

  // Versioned JSON with the algorithm, parameters, features and state.
  std::string ToJson() const;
  static TrainedModel FromJson(std::string_view text);

  bool operator==(const TrainedModel& other) const { return ToJson() == other.ToJson(); }

 private:
  Algorithm algorithm_;
  TrainParams params_;
  std::vector<std::string> features_;
  std::uint64_t seed_;
  std::shared_ptr<const ModelState> state_;
};

// Requires a labeled matrix with both classes, at least one feature and
// finite values (std::invalid_argument otherwise). Deterministic per seed.
TrainedModel Train(Algorithm algorithm, const features::FeatureMatrix& m,
                   const TrainParams& params, std::uint64_t seed);

}  // namespace fakescope::learn

#endif  // FAKESCOPE_LEARN_H_
