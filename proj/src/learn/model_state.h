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

// Fitted state shared by the trainers and the model serializer.

#ifndef FAKESCOPE_SRC_LEARN_MODEL_STATE_H_
#define FAKESCOPE_SRC_LEARN_MODEL_STATE_H_

#include <vector>

#include "fakescope/learn.h"

namespace fakescope::learn {

// Only the fields of the model's algorithm are populated.
struct ModelState {
  // DT.
  DecisionTree tree;
  // RF trees, or AB base learners with their vote weights.
  std::vector<DecisionTree> ensemble;
  std::vector<double> alphas;
  // KNN: min-max normalization and the normalized training rows.
  std::vector<double> lo;
  std::vector<double> range;
  std::vector<double> points;
  std::vector<Label> labels;
  // NB: class index 0 = human, 1 = fake.
  double log_prior[2] = {0, 0};
  std::vector<char> boolean;
  std::vector<double> p_one[2];
  std::vector<double> mean[2];
  std::vector<double> var[2];
  // LR on standardized inputs.
  std::vector<double> center;
  std::vector<double> scale;
  std::vector<double> weights;
  double bias = 0;
};

Prediction PredictWithState(Algorithm algorithm, const TrainParams& params,
                            const ModelState& state, std::span<const double> x);

ModelState FitState(Algorithm algorithm, const features::FeatureMatrix& m,
                    const TrainParams& params, std::uint64_t seed);

}  // namespace fakescope::learn

#endif  // FAKESCOPE_SRC_LEARN_MODEL_STATE_H_
