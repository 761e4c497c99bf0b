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

#include "fakescope/resample.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fakescope/random.h"

namespace fakescope::corpus {
namespace {

std::vector<std::size_t> IndicesOf(const Dataset& dataset, Label label) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset.account(i).label == label) out.push_back(i);
  }
  return out;
}

}  // namespace

Dataset Rebalance(const Dataset& dataset, double human_fraction,
                  std::size_t target_size, std::uint64_t seed) {
  if (!(human_fraction > 0.0 && human_fraction < 1.0)) {
    throw std::invalid_argument("human fraction must lie in (0, 1)");
  }
  if (target_size == 0) throw std::invalid_argument("target size must be > 0");
  const auto n_humans = static_cast<std::size_t>(
      std::llround(static_cast<double>(target_size) * human_fraction));
  const std::size_t n_fakes = target_size - n_humans;

  std::vector<std::size_t> chosen;
  const std::pair<Label, std::size_t> wanted[] = {{Label::kHuman, n_humans},
                                                  {Label::kFake, n_fakes}};
  for (const auto& [label, need] : wanted) {
    std::vector<std::size_t> pool = IndicesOf(dataset, label);
    if (pool.size() < need) {
      throw DataError("insufficient " + std::string(LabelName(label)) +
                      " accounts: need " + std::to_string(need) + ", have " +
                      std::to_string(pool.size()));
    }
    Rng rng(DeriveSeed(seed, {static_cast<std::uint64_t>(label)}));
    rng.Shuffle(pool);
    chosen.insert(chosen.end(), pool.begin(), pool.begin() + need);
  }
  std::sort(chosen.begin(), chosen.end());
  return dataset.Subset(chosen, dataset.provenance() + " | rebalance(h=" +
                                    FormatDouble(human_fraction) +
                                    ", n=" + std::to_string(target_size) +
                                    ", seed=" + std::to_string(seed) + ")");
}

std::vector<std::size_t> FoldPlan::TrainingRows(std::size_t f) const {
  std::vector<std::size_t> out;
  out.reserve(fold_of.size());
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] != f) out.push_back(i);
  }
  return out;
}

FoldPlan StratifiedFolds(std::span<const Label> labels, std::size_t k,
                         std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("fold count must be at least 2");
  if (k > labels.size()) {
    throw std::invalid_argument("fold count " + std::to_string(k) +
                                " exceeds dataset size " +
                                std::to_string(labels.size()));
  }
  FoldPlan plan;
  plan.folds.resize(k);
  plan.fold_of.assign(labels.size(), 0);
  std::size_t next = 0;
  for (const Label label : {Label::kHuman, Label::kFake, Label::kUnlabeled}) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == label) rows.push_back(i);
    }
    Rng rng(DeriveSeed(seed, {static_cast<std::uint64_t>(label)}));
    rng.Shuffle(rows);
    for (const std::size_t row : rows) {
      plan.fold_of[row] = next;
      plan.folds[next].push_back(row);
      next = (next + 1) % k;
    }
  }
  for (auto& fold : plan.folds) std::sort(fold.begin(), fold.end());
  return plan;
}

FoldPlan SplitFolds(const Dataset& dataset, std::size_t k, std::uint64_t seed) {
  const std::vector<Label> labels = dataset.labels();
  return StratifiedFolds(labels, k, seed);
}

}  // namespace fakescope::corpus
