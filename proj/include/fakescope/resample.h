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

// Class-mixture resampling and stratified fold plans.

#ifndef FAKESCOPE_RESAMPLE_H_
#define FAKESCOPE_RESAMPLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "fakescope/corpus.h"

namespace fakescope::corpus {

// Draws round(target_size * human_fraction) humans and the remainder fakes
// without replacement. Unlabeled accounts are never selected. Throws
// DataError naming the class that has too few accounts.
Dataset Rebalance(const Dataset& dataset, double human_fraction,
                  std::size_t target_size, std::uint64_t seed);

struct FoldPlan {
  // Row indices per fold, ascending.
  std::vector<std::vector<std::size_t>> folds;
  // fold_of[row] = fold index.
  std::vector<std::size_t> fold_of;

  std::size_t k() const { return folds.size(); }
  // Rows outside fold `f`, ascending.
  std::vector<std::size_t> TrainingRows(std::size_t f) const;
};

// Each class is shuffled and dealt round-robin; the dealing offset carries
// over between classes so fold sizes differ by at most one overall and per
// class. Throws std::invalid_argument if k < 2 or k > labels.size().
FoldPlan StratifiedFolds(std::span<const Label> labels, std::size_t k,
                         std::uint64_t seed);

FoldPlan SplitFolds(const Dataset& dataset, std::size_t k, std::uint64_t seed);

}  // namespace fakescope::corpus

#endif  // FAKESCOPE_RESAMPLE_H_
