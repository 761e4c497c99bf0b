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
#include <numeric>
#include <stdexcept>

#include "fakescope/learn.h"
#include "fakescope/metrics.h"
#include "fakescope/random.h"

namespace fakescope::learn {
namespace {

constexpr double kMinGain = 1e-12;

class TreeGrower {
 public:
  TreeGrower(const features::FeatureMatrix& m, std::span<const std::size_t> samples,
             std::span<const double> weights, const TreeOptions& options)
      : m_(m), samples_(samples), options_(options) {
    const std::size_t n = samples.size();
    fake_.resize(n);
    weight_.assign(n, 1.0);
    for (std::size_t s = 0; s < n; ++s) {
      const Label l = m.labels.at(samples[s]);
      if (l == Label::kUnlabeled) throw std::invalid_argument("unlabeled training row");
      fake_[s] = IsFake(l);
      if (!weights.empty()) weight_[s] = weights[s];
    }
    for (std::size_t f = 0; f < m.cols(); ++f) {
      bool constant = true;
      for (std::size_t s = 1; s < n && constant; ++s) {
        constant = Value(s, f) == Value(0, f);
      }
      if (constant) continue;
      features_.push_back(f);
      std::vector<double> column(n);
      for (std::size_t s = 0; s < n; ++s) column[s] = Value(s, f);
      columns_.push_back(std::move(column));
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return Value(a, f) < Value(b, f);
      });
      orders_.push_back(std::move(order));
      priority_hash_.push_back(HashString(m.specs[f].name));
    }
    goes_left_.resize(n);
    scratch_.resize(n);
  }

  DecisionTree Grow() {
    if (!samples_.empty()) Build(0, samples_.size(), 1);
    return DecisionTree(std::move(nodes_));
  }

 private:
  struct Split {
    bool valid = false;
    double gain = 0;
    std::size_t slot = 0;  // index into features_
    double threshold = 0;
    std::size_t left_count = 0;
  };

  double Value(std::size_t s, std::size_t f) const { return m_.at(samples_[s], f); }

  std::vector<std::size_t> Candidates(std::size_t node_index) const {
    std::vector<std::size_t> slots(features_.size());
    std::iota(slots.begin(), slots.end(), 0);
    if (options_.mtry <= 0 || static_cast<std::size_t>(options_.mtry) >= slots.size()) {
      return slots;
    }
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed;
    for (const std::size_t slot : slots) {
      keyed.emplace_back(DeriveSeed(options_.seed, {node_index, priority_hash_[slot]}),
                         slot);
    }
    std::sort(keyed.begin(), keyed.end());
    slots.clear();
    for (int i = 0; i < options_.mtry; ++i) slots.push_back(keyed[i].second);
    std::sort(slots.begin(), slots.end());
    return slots;
  }

  Split BestSplit(std::size_t begin, std::size_t end, double pos, double neg,
                  std::size_t node_index) const {
    Split best;
    const double total = pos + neg;
    const double parent = metrics::Entropy(pos, neg);
    const auto min_leaf = static_cast<std::size_t>(std::max(1, options_.min_leaf));
    const std::size_t count = end - begin;
    for (const std::size_t slot : Candidates(node_index)) {
      const auto& order = orders_[slot];
      const auto& column = columns_[slot];
      double lp = 0, ln = 0;
      for (std::size_t k = begin; k + 1 < end; ++k) {
        const std::size_t s = order[k];
        (fake_[s] ? lp : ln) += weight_[s];
        const double v = column[s];
        const double next = column[order[k + 1]];
        if (v == next) continue;
        const std::size_t left_count = k + 1 - begin;
        if (left_count < min_leaf || count - left_count < min_leaf) continue;
        const double lw = lp + ln;
        const double rw = total - lw;
        const double gain = parent - (lw / total) * metrics::Entropy(lp, ln) -
                            (rw / total) * metrics::Entropy(pos - lp, neg - ln);
        if (gain <= kMinGain) continue;
        if (best.valid && gain <= best.gain + kMinGain) continue;
        double threshold = v + (next - v) / 2.0;
        if (!(threshold < next)) threshold = v;
        best = {true, gain, slot, threshold, left_count};
      }
    }
    return best;
  }

  int Build(std::size_t begin, std::size_t end, int depth) {
    const int index = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    double pos = 0, neg = 0;
    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t s = orders_.empty() ? k : orders_[0][k];
      (fake_[s] ? pos : neg) += weight_[s];
    }
    {
      TreeNode& node = nodes_[index];
      node.pos = pos;
      node.neg = neg;
      node.samples = static_cast<std::int64_t>(end - begin);
    }
    const std::size_t count = end - begin;
    const auto min_leaf = static_cast<std::size_t>(std::max(1, options_.min_leaf));
    if (pos <= 0 || neg <= 0 || orders_.empty() || count < 2 * min_leaf ||
        (options_.max_depth > 0 && depth > options_.max_depth)) {
      return index;
    }
    const Split split = BestSplit(begin, end, pos, neg, static_cast<std::size_t>(index));
    if (!split.valid) return index;

    const std::size_t f = features_[split.slot];
    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t s = orders_[split.slot][k];
      goes_left_[s] = columns_[split.slot][s] <= split.threshold;
    }
    const std::size_t mid = begin + split.left_count;
    for (auto& order : orders_) {
      std::size_t l = begin, r = mid;
      for (std::size_t k = begin; k < end; ++k) {
        const std::size_t s = order[k];
        scratch_[goes_left_[s] ? l++ : r++] = s;
      }
      std::copy(scratch_.begin() + static_cast<std::ptrdiff_t>(begin),
                scratch_.begin() + static_cast<std::ptrdiff_t>(end),
                order.begin() + static_cast<std::ptrdiff_t>(begin));
    }
    const int left = Build(begin, mid, depth + 1);
    const int right = Build(mid, end, depth + 1);
    TreeNode& node = nodes_[index];
    node.feature = static_cast<int>(f);
    node.threshold = split.threshold;
    node.left = left;
    node.right = right;
    return index;
  }

  const features::FeatureMatrix& m_;
  std::span<const std::size_t> samples_;
  TreeOptions options_;
  std::vector<char> fake_;
  std::vector<double> weight_;
  std::vector<std::size_t> features_;
  std::vector<std::vector<double>> columns_;  // per slot, by sample
  std::vector<std::vector<std::size_t>> orders_;
  std::vector<std::uint64_t> priority_hash_;
  std::vector<char> goes_left_;
  std::vector<std::size_t> scratch_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

DecisionTree::DecisionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw std::invalid_argument("tree without nodes");
  const int n = static_cast<int>(nodes_.size());
  std::vector<int> parents(nodes_.size(), 0);
  for (const TreeNode& node : nodes_) {
    if (node.is_leaf()) continue;
    if (node.left <= 0 || node.right <= 0 || node.left >= n || node.right >= n) {
      throw std::invalid_argument("tree node with an invalid child index");
    }
    ++parents[static_cast<std::size_t>(node.left)];
    ++parents[static_cast<std::size_t>(node.right)];
  }
  for (int i = 1; i < n; ++i) {
    if (parents[static_cast<std::size_t>(i)] != 1) {
      throw std::invalid_argument("tree node without exactly one parent");
    }
  }
}

std::size_t DecisionTree::LeafFor(std::span<const double> x) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const TreeNode& node = nodes_[i];
    const auto f = static_cast<std::size_t>(node.feature);
    if (f >= x.size()) throw std::invalid_argument("feature vector too short");
    i = static_cast<std::size_t>(x[f] <= node.threshold ? node.left : node.right);
  }
  return i;
}

double DecisionTree::Score(std::span<const double> x) const {
  return nodes_[LeafFor(x)].score();
}

Label DecisionTree::Classify(std::span<const double> x) const {
  return Score(x) >= 0.5 ? Label::kFake : Label::kHuman;
}

TreeStats ComputeTreeStats(const DecisionTree& tree) {
  TreeStats stats{0, 0, 0};
  std::vector<std::pair<std::size_t, int>> stack = {{0, 1}};
  while (!stack.empty()) {
    const auto [i, depth] = stack.back();
    stack.pop_back();
    const TreeNode& node = tree.nodes()[i];
    ++stats.nodes;
    stats.height = std::max(stats.height, depth);
    if (node.is_leaf()) {
      ++stats.leaves;
    } else {
      stack.emplace_back(static_cast<std::size_t>(node.left), depth + 1);
      stack.emplace_back(static_cast<std::size_t>(node.right), depth + 1);
    }
  }
  return stats;
}

DecisionTree GrowTree(const features::FeatureMatrix& m,
                      std::span<const std::size_t> samples,
                      std::span<const double> weights, const TreeOptions& options) {
  if (!weights.empty() && weights.size() != samples.size()) {
    throw std::invalid_argument("one weight per sample required");
  }
  for (const std::size_t s : samples) {
    if (s >= m.rows()) throw std::invalid_argument("sample row out of range");
  }
  return TreeGrower(m, samples, weights, options).Grow();
}

}  // namespace fakescope::learn
