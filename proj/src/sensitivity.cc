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

#include "fakescope/sensitivity.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fakescope/csv.h"
#include "fakescope/metrics.h"
#include "fakescope/parallel.h"
#include "fakescope/random.h"
#include "json.hpp"

namespace fakescope::sensitivity {
namespace {

constexpr int kBarWidth = 40;

double TestMcc(const learn::TrainedModel& model, const features::FeatureMatrix& test) {
  metrics::ConfusionMatrix cm;
  const auto predictions = model.PredictAll(test);
  for (std::size_t r = 0; r < test.rows(); ++r) cm.Add(test.labels[r], predictions[r].label);
  return metrics::Mcc(cm);
}

}  // namespace

double LocalSensitivity(double mcc_full, double mcc_without) {
  if (!(mcc_full > 0)) throw std::invalid_argument("local sensitivity needs MCC > 0");
  return std::max(mcc_without, 0.0) / mcc_full;
}

SensitivityReport Aggregate(const std::vector<features::FeatureSpec>& specs,
                            const std::vector<learn::Algorithm>& algorithms,
                            const std::vector<double>& mcc_full,
                            const std::vector<std::vector<double>>& mcc_without) {
  if (algorithms.size() != mcc_full.size() || algorithms.size() != mcc_without.size()) {
    throw std::invalid_argument("one MCC row per algorithm required");
  }
  SensitivityReport report;
  report.specs = specs;
  double total = 0;
  for (std::size_t j = 0; j < algorithms.size(); ++j) {
    if (mcc_without[j].size() != specs.size()) {
      throw std::invalid_argument("one MCC per feature required");
    }
    AlgorithmResult a;
    a.algorithm = algorithms[j];
    a.mcc_full = mcc_full[j];
    a.mcc_without = mcc_without[j];
    a.excluded = !(a.mcc_full > 0);
    if (a.excluded) {
      report.warnings.push_back(std::string(learn::AlgorithmName(a.algorithm)) +
                                ": MCC " + FormatDouble(a.mcc_full) +
                                " <= 0 on the test set, excluded from the fusion");
    } else {
      total += a.mcc_full;
      for (const double m : a.mcc_without) a.local.push_back(LocalSensitivity(a.mcc_full, m));
    }
    report.algorithms.push_back(std::move(a));
  }
  if (total <= 0) throw DataError("every algorithm has MCC <= 0; no importance can be fused");
  report.raw.assign(specs.size(), 0.0);
  for (AlgorithmResult& a : report.algorithms) {
    if (a.excluded) continue;
    a.weight = a.mcc_full / total;
    for (std::size_t i = 0; i < specs.size(); ++i) {
      report.raw[i] += a.weight * a.mcc_full / std::max(a.mcc_without[i], kMccFloor);
    }
  }
  const double top =
      report.raw.empty() ? 1.0 : *std::max_element(report.raw.begin(), report.raw.end());
  for (const double g : report.raw) report.normalized.push_back(g / top);
  report.ranking.resize(specs.size());
  std::iota(report.ranking.begin(), report.ranking.end(), 0);
  std::stable_sort(report.ranking.begin(), report.ranking.end(),
                   [&](std::size_t a, std::size_t b) {
                     return report.normalized[a] > report.normalized[b];
                   });
  return report;
}

SensitivityReport Analyze(const features::FeatureMatrix& train,
                          const features::FeatureMatrix& test,
                          const AnalyzeOptions& options) {
  if (train.names() != test.names()) {
    throw std::invalid_argument("train and test matrices have different features");
  }
  if (train.cols() < 2) throw std::invalid_argument("sensitivity needs at least two features");
  if (options.algorithms.empty()) throw std::invalid_argument("no algorithms given");
  const std::size_t d = train.cols();
  const std::size_t n_alg = options.algorithms.size();
  // Cell (j, 0) is the full model, (j, i + 1) drops feature i.
  std::vector<double> mcc(n_alg * (d + 1), 0.0);
  learn::TrainParams params = options.params;
  if (options.jobs > 1) params.jobs = 1;
  ParallelFor(mcc.size(), options.jobs, [&](std::size_t cell) {
    const std::size_t j = cell / (d + 1);
    const std::size_t slot = cell % (d + 1);
    const learn::Algorithm algorithm = options.algorithms[j];
    const std::uint64_t seed =
        DeriveSeed(options.seed, {static_cast<std::uint64_t>(algorithm)});
    if (slot == 0) {
      mcc[cell] = TestMcc(learn::Train(algorithm, train, params, seed), test);
    } else {
      const features::FeatureMatrix tr = train.WithoutColumn(slot - 1);
      const features::FeatureMatrix te = test.WithoutColumn(slot - 1);
      mcc[cell] = TestMcc(learn::Train(algorithm, tr, params, seed), te);
    }
  });
  std::vector<double> full(n_alg);
  std::vector<std::vector<double>> without(n_alg, std::vector<double>(d));
  for (std::size_t j = 0; j < n_alg; ++j) {
    full[j] = mcc[j * (d + 1)];
    for (std::size_t i = 0; i < d; ++i) without[j][i] = mcc[j * (d + 1) + i + 1];
  }
  SensitivityReport report = Aggregate(train.specs, options.algorithms, full, without);
  report.seed = options.seed;
  return report;
}

SensitivityReport Analyze(const corpus::Dataset& train, const corpus::Dataset& test,
                          const std::vector<features::FeatureSpec>& specs,
                          const AnalyzeOptions& options) {
  features::ExtractOptions extract;
  extract.jobs = options.jobs;
  return Analyze(features::Extract(train, specs, extract),
                 features::Extract(test, specs, extract), options);
}

void WriteSensitivityCsv(std::ostream& out, const SensitivityReport& report) {
  std::vector<std::string> header = {"rank", "feature", "id", "raw", "normalized"};
  for (const AlgorithmResult& a : report.algorithms) {
    header.push_back("local_" + std::string(learn::AlgorithmName(a.algorithm)));
  }
  WriteCsvRow(out, header);
  for (std::size_t r = 0; r < report.ranking.size(); ++r) {
    const std::size_t i = report.ranking[r];
    std::vector<std::string> cells = {std::to_string(r + 1), report.specs[i].name,
                                      report.specs[i].id, FormatDouble(report.raw[i]),
                                      FormatDouble(report.normalized[i])};
    for (const AlgorithmResult& a : report.algorithms) {
      cells.push_back(a.excluded ? "" : FormatDouble(a.local[i]));
    }
    WriteCsvRow(out, cells);
  }
}

void WriteSensitivityTable(std::ostream& out, const SensitivityReport& report) {
  std::size_t width = 7;
  for (const auto& s : report.specs) width = std::max(width, s.name.size());
  out << std::left << std::setw(6) << "rank" << std::setw(static_cast<int>(width) + 2)
      << "feature" << std::setw(8) << "score" << "\n";
  for (std::size_t r = 0; r < report.ranking.size(); ++r) {
    const std::size_t i = report.ranking[r];
    const double v = report.normalized[i];
    const int bar = static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * kBarWidth));
    std::ostringstream score;
    score << std::fixed << std::setprecision(3) << v;
    out << std::left << std::setw(6) << (r + 1) << std::setw(static_cast<int>(width) + 2)
        << report.specs[i].name << std::setw(8) << score.str() << std::string(bar, '#')
        << "\n";
  }
  out << "\nweights:";
  for (const AlgorithmResult& a : report.algorithms) {
    out << " " << learn::AlgorithmName(a.algorithm) << "="
        << (a.excluded ? std::string("excluded") : FormatDouble(a.weight));
  }
  out << "\n";
  for (const std::string& w : report.warnings) out << "warning: " << w << "\n";
}

std::string SensitivityJson(const SensitivityReport& report) {
  using nlohmann::json;
  json algorithms = json::array();
  for (const AlgorithmResult& a : report.algorithms) {
    json j = {{"algorithm", learn::AlgorithmName(a.algorithm)},
              {"mcc_full", a.mcc_full},
              {"mcc_without", a.mcc_without},
              {"excluded", a.excluded},
              {"weight", a.weight},
              {"local", a.local}};
    algorithms.push_back(j);
  }
  json features = json::array();
  for (std::size_t r = 0; r < report.ranking.size(); ++r) {
    const std::size_t i = report.ranking[r];
    features.push_back({{"rank", r + 1},
                        {"feature", report.specs[i].name},
                        {"id", report.specs[i].id},
                        {"raw", report.raw[i]},
                        {"normalized", report.normalized[i]}});
  }
  return json({{"seed", report.seed},
               {"algorithms", algorithms},
               {"features", features},
               {"warnings", report.warnings}})
             .dump(2) +
         "\n";
}

}  // namespace fakescope::sensitivity
