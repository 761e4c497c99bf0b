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

// Leave-one-feature-out importance fused over several classifiers.
//
// For classifier j trained on all features, MCC_j is its test MCC and
// MCC_{j,-i} the MCC after retraining without feature i. The local
// sensitivity is S_{j,i} = MCC_{j,-i} / MCC_j. Classifiers are weighted by
// w_j = MCC_j / sum MCC. The raw importance of feature i is
// G_i = sum_j w_j * MCC_j / max(MCC_{j,-i}, 1e-6), and the reported score is
// G_i / max G, so the most important feature scores 1.

#ifndef FAKESCOPE_SENSITIVITY_H_
#define FAKESCOPE_SENSITIVITY_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "fakescope/corpus.h"
#include "fakescope/features.h"
#include "fakescope/learn.h"

namespace fakescope::sensitivity {

inline constexpr double kMccFloor = 1e-6;

// max(mcc_without, 0) / mcc_full. Throws std::invalid_argument unless
// mcc_full > 0.
double LocalSensitivity(double mcc_full, double mcc_without);

struct AlgorithmResult {
  learn::Algorithm algorithm = learn::Algorithm::kDT;
  double mcc_full = 0;
  // Per feature, in spec order.
  std::vector<double> mcc_without;
  // Classifiers with MCC_j <= 0 carry no weight and no local scores.
  bool excluded = false;
  double weight = 0;
  std::vector<double> local;
};

struct SensitivityReport {
  std::vector<features::FeatureSpec> specs;
  std::vector<AlgorithmResult> algorithms;
  std::vector<std::string> warnings;
  std::vector<double> raw;         // G_i
  std::vector<double> normalized;  // G_i / max G
  // Feature indices by descending score; ties keep spec order.
  std::vector<std::size_t> ranking;
  std::uint64_t seed = 0;
};

struct AnalyzeOptions {
  std::vector<learn::Algorithm> algorithms = learn::AllAlgorithms();
  learn::TrainParams params;
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Trains every algorithm on all columns and once without each column. All
// models of one algorithm share the seed DeriveSeed(seed, {algorithm}), so
// a removed column is the only difference between them. Throws
// std::invalid_argument when the matrices disagree on columns and DataError
// when every algorithm is excluded.
SensitivityReport Analyze(const features::FeatureMatrix& train,
                          const features::FeatureMatrix& test,
                          const AnalyzeOptions& options);

SensitivityReport Analyze(const corpus::Dataset& train, const corpus::Dataset& test,
                          const std::vector<features::FeatureSpec>& specs,
                          const AnalyzeOptions& options);

// The aggregation step on a finished grid: mcc_without[j][i].
SensitivityReport Aggregate(const std::vector<features::FeatureSpec>& specs,
                            const std::vector<learn::Algorithm>& algorithms,
                            const std::vector<double>& mcc_full,
                            const std::vector<std::vector<double>>& mcc_without);

// Columns: rank, feature, id, raw, normalized, then one local score per
// algorithm.
void WriteSensitivityCsv(std::ostream& out, const SensitivityReport& report);
// Ranked table with a bar per feature.
void WriteSensitivityTable(std::ostream& out, const SensitivityReport& report);
std::string SensitivityJson(const SensitivityReport& report);

}  // namespace fakescope::sensitivity

#endif  // FAKESCOPE_SENSITIVITY_H_
