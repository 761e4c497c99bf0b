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
#include <stdexcept>

#include <boost/math/distributions/normal.hpp>

#include "fakescope/learn.h"
#include "fakescope/resample.h"

namespace fakescope::learn {
namespace {

TreeNode AsLeaf(const TreeNode& node) {
  TreeNode leaf;
  leaf.pos = node.pos;
  leaf.neg = node.neg;
  leaf.samples = node.samples;
  return leaf;
}

bool LeafSaysFake(const TreeNode& node) { return node.score() >= 0.5; }

class ReducedErrorPruner {
 public:
  ReducedErrorPruner(const DecisionTree& tree, const features::FeatureMatrix& m)
      : tree_(tree), m_(m) {}

  DecisionTree Run(std::span<const std::size_t> holdout) {
    std::vector<std::size_t> rows(holdout.begin(), holdout.end());
    Visit(0, rows);
    return DecisionTree(std::move(out_));
  }

 private:
  // Appends the pruned copy of node `i`; returns its held-out errors.
  std::int64_t Visit(std::size_t i, const std::vector<std::size_t>& rows) {
    const TreeNode& node = tree_.nodes()[i];
    const std::size_t index = out_.size();
    out_.push_back(AsLeaf(node));
    const bool fake = LeafSaysFake(node);
    std::int64_t leaf_errors = 0;
    for (const std::size_t r : rows) leaf_errors += IsFake(m_.labels[r]) != fake;
    if (node.is_leaf()) return leaf_errors;

    std::vector<std::size_t> left_rows, right_rows;
    for (const std::size_t r : rows) {
      const double v = m_.at(r, static_cast<std::size_t>(node.feature));
      (v <= node.threshold ? left_rows : right_rows).push_back(r);
    }
    const auto left = static_cast<int>(out_.size());
    const std::int64_t left_errors = Visit(static_cast<std::size_t>(node.left), left_rows);
    const auto right = static_cast<int>(out_.size());
    const std::int64_t right_errors =
        Visit(static_cast<std::size_t>(node.right), right_rows);
    const std::int64_t subtree_errors = left_errors + right_errors;
    if (leaf_errors <= subtree_errors) {
      out_.resize(index + 1);
      return leaf_errors;
    }
    TreeNode& copy = out_[index];
    copy.feature = node.feature;
    copy.threshold = node.threshold;
    copy.left = left;
    copy.right = right;
    return subtree_errors;
  }

  const DecisionTree& tree_;
  const features::FeatureMatrix& m_;
  std::vector<TreeNode> out_;
};

class PessimisticPruner {
 public:
  PessimisticPruner(const DecisionTree& tree, double confidence)
      : tree_(tree), confidence_(confidence) {}

  DecisionTree Run() {
    Visit(0);
    return DecisionTree(std::move(out_));
  }

 private:
  double LeafEstimate(const TreeNode& node) const {
    const double n = node.pos + node.neg;
    const double e = LeafSaysFake(node) ? node.neg : node.pos;
    return e + PessimisticExtraErrors(n, e, confidence_);
  }

  // Appends the pruned copy of node `i`; returns its estimated errors.
  double Visit(std::size_t i) {
    const TreeNode& node = tree_.nodes()[i];
    const std::size_t index = out_.size();
    out_.push_back(AsLeaf(node));
    const double leaf_estimate = LeafEstimate(node);
    if (node.is_leaf()) return leaf_estimate;
    const auto left = static_cast<int>(out_.size());
    const double left_estimate = Visit(static_cast<std::size_t>(node.left));
    const auto right = static_cast<int>(out_.size());
    const double right_estimate = Visit(static_cast<std::size_t>(node.right));
    const double subtree_estimate = left_estimate + right_estimate;
    if (leaf_estimate <= subtree_estimate + 0.1) {
      out_.resize(index + 1);
      return leaf_estimate;
    }
    TreeNode& copy = out_[index];
    copy.feature = node.feature;
    copy.threshold = node.threshold;
    copy.left = left;
    copy.right = right;
    return subtree_estimate;
  }

  const DecisionTree& tree_;
  double confidence_;
  std::vector<TreeNode> out_;
};

}  // namespace

double PessimisticExtraErrors(double n, double e, double confidence) {
  if (!(confidence > 0.0 && confidence <= 0.5)) {
    throw std::invalid_argument("pruning confidence must be in (0, 0.5]");
  }
  if (n <= 0) return 0.0;
  if (e < 1.0) {
    const double base = n * (1.0 - std::pow(confidence, 1.0 / n));
    if (e == 0.0) return base;
    return base + e * (PessimisticExtraErrors(n, 1.0, confidence) - base);
  }
  if (e + 0.5 >= n) return std::max(n - e, 0.0);
  const boost::math::normal standard;
  const double z = boost::math::quantile(standard, 1.0 - confidence);
  const double f = (e + 0.5) / n;
  const double r =
      (f + z * z / (2 * n) + z * std::sqrt(f / n - f * f / n + z * z / (4 * n * n))) /
      (1 + z * z / n);
  return r * n - e;
}

DecisionTree PruneReducedError(const DecisionTree& tree,
                               const features::FeatureMatrix& m,
                               std::span<const std::size_t> holdout) {
  for (const std::size_t r : holdout) {
    if (r >= m.rows()) throw std::invalid_argument("holdout row out of range");
    if (m.labels.at(r) == Label::kUnlabeled) {
      throw std::invalid_argument("unlabeled holdout row");
    }
  }
  return ReducedErrorPruner(tree, m).Run(holdout);
}

DecisionTree PruneSubtreeRaising(const DecisionTree& tree, double confidence) {
  return PessimisticPruner(tree, confidence).Run();
}

DecisionTree Prune(const DecisionTree& tree, const features::FeatureMatrix& training,
                   const PruneOptions& options, std::uint64_t seed) {
  switch (options.strategy) {
    case PruneStrategy::kNone:
      return tree;
    case PruneStrategy::kSubtreeRaising:
      return PruneSubtreeRaising(tree, options.confidence);
    case PruneStrategy::kReducedError: {
      if (options.folds < 2 || static_cast<std::size_t>(options.folds) > training.rows()) {
        throw std::invalid_argument("reduced-error folds must be in [2, training size]");
      }
      const corpus::FoldPlan plan = corpus::StratifiedFolds(
          training.labels, static_cast<std::size_t>(options.folds), seed);
      return PruneReducedError(tree, training, plan.folds[0]);
    }
  }
  return tree;
}

}  // namespace fakescope::learn
