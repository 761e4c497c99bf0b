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

// Stratified k-fold cross-validation and the class-distribution sweep.

#ifndef FAKESCOPE_VALIDATION_H_
#define FAKESCOPE_VALIDATION_H_

#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakescope/corpus.h"
#include "fakescope/features.h"
#include "fakescope/learn.h"
#include "fakescope/metrics.h"

namespace fakescope::learn {

struct CvReport {
  Algorithm algorithm = Algorithm::kDT;
  TrainParams params;
  std::uint64_t seed = 0;
  std::size_t k = 0;
  std::vector<std::string> features;
  std::vector<metrics::ConfusionMatrix> folds;
  metrics::ConfusionMatrix pooled;
  metrics::MetricsReport metrics;  // pooled, with auc
  metrics::RocCurve roc;           // pooled held-out scores
  // Per input row.
  std::vector<UserId> ids;
  std::vector<Label> labels;
  std::vector<std::size_t> fold_of;
  std::vector<Prediction> predictions;
};

// Fold f trains with seed DeriveSeed(seed, {f}). Folds come from
// corpus::StratifiedFolds(labels, k, seed). `jobs` bounds the folds trained
// at once; the report does not depend on it.
CvReport CrossValidate(Algorithm algorithm, const features::FeatureMatrix& m,
                       std::size_t k, std::uint64_t seed,
                       const TrainParams& params = {}, int jobs = 1);

// Extracts `specs` once, then cross-validates the matrix.
CvReport CrossValidate(Algorithm algorithm, const corpus::Dataset& dataset,
                       const std::vector<features::FeatureSpec>& specs,
                       std::size_t k, std::uint64_t seed,
                       const TrainParams& params = {}, int jobs = 1);

// Rows: one per fold, then "pooled".
void WriteCvCsv(std::ostream& out, const CvReport& report);
std::string CvJson(const CvReport& report);
void WriteRocCsv(std::ostream& out, const metrics::RocCurve& roc);
void WritePredictionsCsv(std::ostream& out, const CvReport& report);

struct SweepEntry {
  double human_fraction = 0.5;
  // One cross-validation per independently drawn mixture.
  std::vector<CvReport> replicates;
  // Confusion matrices summed over the replicates; auc is their mean.
  metrics::ConfusionMatrix pooled;
  metrics::MetricsReport metrics;
};

struct SweepReport {
  std::size_t target_size = 0;
  std::size_t repeats = 1;
  std::vector<SweepEntry> entries;
  // Metric name -> human fraction with the highest value (first on ties).
  std::map<std::string, double> best_fraction;
};

// Metric names used by the sweep: accuracy, precision, recall, f_measure,
// mcc, auc.
const std::vector<std::string>& SweepMetricNames();
double MetricByName(const metrics::MetricsReport& r, std::string_view name);

// Replicate r of every fraction draws its mixture with corpus::Rebalance(
// dataset, fraction, target_size, DeriveSeed(seed, {r})) and cross-validates
// it with the same derived seed, so all fractions share their random
// numbers and differ only in the class mix. Throws std::invalid_argument on
// an empty fraction list or repeats == 0.
SweepReport ClassDistributionSweep(const corpus::Dataset& dataset,
                                   Algorithm algorithm,
                                   const std::vector<features::FeatureSpec>& specs,
                                   std::span<const double> human_fractions,
                                   std::size_t target_size, std::size_t k,
                                   std::uint64_t seed, const TrainParams& params = {},
                                   int jobs = 1, std::size_t repeats = 1);

// Largest target size every mixture can be drawn at.
std::size_t MaxSweepSize(const corpus::Dataset& dataset,
                         std::span<const double> human_fractions);

// "start:stop:step" (inclusive) or a comma-separated list. Every value must
// lie in (0, 1).
std::vector<double> ParseFractions(std::string_view text);

// One row per fraction with every metric, then the argmax per metric.
void WriteSweepCsv(std::ostream& out, const SweepReport& report);
std::string SweepJson(const SweepReport& report);

}  // namespace fakescope::learn

#endif  // FAKESCOPE_VALIDATION_H_
