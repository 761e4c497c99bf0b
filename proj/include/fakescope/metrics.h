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

// Binary classification measures. Fake is the positive class.
//
// Zero denominators yield 0 (precision, recall, F-measure, MCC). Label
// spans must contain only kHuman and kFake.

#ifndef FAKESCOPE_METRICS_H_
#define FAKESCOPE_METRICS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fakescope/common.h"

namespace fakescope::metrics {

struct ConfusionMatrix {
  std::int64_t tp = 0;
  std::int64_t tn = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;

  std::int64_t total() const { return tp + tn + fp + fn; }
  void Add(Label actual, Label predicted);
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  bool operator==(const ConfusionMatrix&) const = default;

  static ConfusionMatrix FromPredictions(std::span<const Label> actual,
                                         std::span<const Label> predicted);
};

struct MetricsReport {
  double accuracy = 0;
  double precision = 0;
  double recall = 0;
  double f_measure = 0;
  double mcc = 0;
  std::optional<double> auc;
};

// Throws std::invalid_argument for an empty matrix.
MetricsReport Summarize(const ConfusionMatrix& cm);
double Mcc(const ConfusionMatrix& cm);

struct RocPoint {
  double threshold = 0;  // predict fake when score >= threshold
  double fpr = 0;
  double tpr = 0;
};

struct RocCurve {
  // From (0, 0) to (1, 1), one point per distinct score.
  std::vector<RocPoint> points;
  double auc = 0;
};

// AUC is the Mann-Whitney statistic with midranks for ties, equal to the
// trapezoidal area under `points`. Throws std::invalid_argument unless both
// classes are present.
RocCurve RocAuc(std::span<const double> scores, std::span<const Label> labels);
double Auc(std::span<const double> scores, std::span<const Label> labels);

// Base-2 entropy of a two-class distribution given (weighted) counts.
double Entropy(double positive, double negative);
double LabelEntropy(std::span<const Label> labels);

struct ThresholdSplit {
  double gain = 0;
  // Midpoint between adjacent distinct values; samples <= threshold go left.
  double threshold = 0;
  bool valid = false;  // false when all values are equal
};

// Best binary split over midpoints of sorted distinct values. Ties keep the
// lowest threshold. Weights default to 1.
ThresholdSplit BestThresholdSplit(std::span<const double> values,
                                  std::span<const Label> labels,
                                  std::span<const double> weights = {});

// Information gain in bits of the best binary threshold split; for 0/1
// attributes this is the ordinary discrete information gain.
double InfoGain(std::span<const double> values, std::span<const Label> labels);

// Information gain treating every distinct value as its own category.
double InfoGainDiscrete(std::span<const double> values,
                        std::span<const Label> labels);

struct PearsonResult {
  double r = 0;
  // Set when either side has zero variance; r is then 0.
  bool degenerate = false;
};

PearsonResult Pearson(std::span<const double> x, std::span<const double> y);
// Correlation with the label encoded as fake = 1, human = 0.
PearsonResult PearsonWithLabels(std::span<const double> values,
                                std::span<const Label> labels);

}  // namespace fakescope::metrics

#endif  // FAKESCOPE_METRICS_H_
