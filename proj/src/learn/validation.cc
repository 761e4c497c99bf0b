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

#include "fakescope/validation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fakescope/csv.h"
#include "fakescope/parallel.h"
#include "fakescope/random.h"
#include "fakescope/resample.h"
#include "json.hpp"

namespace fakescope::learn {
namespace {

using nlohmann::json;

json MetricsJson(const metrics::MetricsReport& r) {
  json j = {{"accuracy", r.accuracy},
            {"precision", r.precision},
            {"recall", r.recall},
            {"f_measure", r.f_measure},
            {"mcc", r.mcc}};
  j["auc"] = r.auc ? json(*r.auc) : json(nullptr);
  return j;
}

json ConfusionJson(const metrics::ConfusionMatrix& cm) {
  return {{"tp", cm.tp}, {"tn", cm.tn}, {"fp", cm.fp}, {"fn", cm.fn}};
}

json CvReportJson(const CvReport& r) {
  json folds = json::array();
  for (const auto& cm : r.folds) folds.push_back(ConfusionJson(cm));
  return {{"algorithm", AlgorithmName(r.algorithm)},
          {"seed", r.seed},
          {"k", r.k},
          {"features", r.features},
          {"params", json::parse(TrainParamsJson(r.params))},
          {"folds", folds},
          {"pooled", ConfusionJson(r.pooled)},
          {"metrics", MetricsJson(r.metrics)}};
}

std::string Cell(std::int64_t v) { return std::to_string(v); }

}  // namespace

CvReport CrossValidate(Algorithm algorithm, const features::FeatureMatrix& m,
                       std::size_t k, std::uint64_t seed, const TrainParams& params,
                       int jobs) {
  if (k < 2) throw std::invalid_argument("cross-validation needs k >= 2");
  if (m.labels.size() != m.rows()) throw std::invalid_argument("matrix rows need labels");
  const corpus::FoldPlan plan = corpus::StratifiedFolds(m.labels, k, seed);
  CvReport report;
  report.algorithm = algorithm;
  report.params = params;
  report.seed = seed;
  report.k = k;
  report.features = m.names();
  report.ids = m.ids;
  report.labels = m.labels;
  report.fold_of = plan.fold_of;
  report.predictions.resize(m.rows());
  report.folds.resize(k);
  TrainParams inner = params;
  if (jobs > 1) inner.jobs = 1;
  ParallelFor(k, jobs, [&](std::size_t f) {
    const std::vector<std::size_t> train_rows = plan.TrainingRows(f);
    const TrainedModel model =
        Train(algorithm, m.SelectRows(train_rows), inner, DeriveSeed(seed, {f}));
    metrics::ConfusionMatrix cm;
    for (const std::size_t r : plan.folds[f]) {
      const Prediction p = model.Predict(m.row(r));
      report.predictions[r] = p;
      cm.Add(m.labels[r], p.label);
    }
    report.folds[f] = cm;
  });
  for (const auto& cm : report.folds) report.pooled += cm;
  report.metrics = metrics::Summarize(report.pooled);
  std::vector<double> scores;
  scores.reserve(m.rows());
  for (const Prediction& p : report.predictions) scores.push_back(p.score);
  report.roc = metrics::RocAuc(scores, m.labels);
  report.metrics.auc = report.roc.auc;
  return report;
}

CvReport CrossValidate(Algorithm algorithm, const corpus::Dataset& dataset,
                       const std::vector<features::FeatureSpec>& specs,
                       std::size_t k, std::uint64_t seed, const TrainParams& params,
                       int jobs) {
  features::ExtractOptions options;
  options.jobs = jobs;
  return CrossValidate(algorithm, features::Extract(dataset, specs, options), k, seed,
                       params, jobs);
}

void WriteCvCsv(std::ostream& out, const CvReport& report) {
  WriteCsvRow(out, {"fold", "tp", "tn", "fp", "fn", "accuracy", "precision", "recall",
                    "f_measure", "mcc", "auc"});
  auto row = [&](const std::string& name, const metrics::ConfusionMatrix& cm,
                 const std::string& auc) {
    if (cm.total() == 0) {
      WriteCsvRow(out, {name, "0", "0", "0", "0", "", "", "", "", "", auc});
      return;
    }
    const metrics::MetricsReport m = metrics::Summarize(cm);
    WriteCsvRow(out, {name, Cell(cm.tp), Cell(cm.tn), Cell(cm.fp), Cell(cm.fn),
                      FormatDouble(m.accuracy), FormatDouble(m.precision),
                      FormatDouble(m.recall), FormatDouble(m.f_measure),
                      FormatDouble(m.mcc), auc});
  };
  for (std::size_t f = 0; f < report.folds.size(); ++f) {
    row(std::to_string(f), report.folds[f], "");
  }
  row("pooled", report.pooled, report.metrics.auc ? FormatDouble(*report.metrics.auc) : "");
}

std::string CvJson(const CvReport& report) { return CvReportJson(report).dump(2) + "\n"; }

void WriteRocCsv(std::ostream& out, const metrics::RocCurve& roc) {
  WriteCsvRow(out, {"threshold", "fpr", "tpr"});
  for (const auto& p : roc.points) {
    WriteCsvRow(out, {std::isinf(p.threshold) ? "inf" : FormatDouble(p.threshold),
                      FormatDouble(p.fpr), FormatDouble(p.tpr)});
  }
}

void WritePredictionsCsv(std::ostream& out, const CvReport& report) {
  WriteCsvRow(out, {"id", "label", "fold", "predicted", "score"});
  for (std::size_t r = 0; r < report.ids.size(); ++r) {
    WriteCsvRow(out, {std::to_string(report.ids[r]), std::string(LabelName(report.labels[r])),
                      std::to_string(report.fold_of[r]),
                      std::string(LabelName(report.predictions[r].label)),
                      FormatDouble(report.predictions[r].score)});
  }
}

const std::vector<std::string>& SweepMetricNames() {
  static const std::vector<std::string> names = {"accuracy", "precision", "recall",
                                                 "f_measure", "mcc", "auc"};
  return names;
}

double MetricByName(const metrics::MetricsReport& r, std::string_view name) {
  if (name == "accuracy") return r.accuracy;
  if (name == "precision") return r.precision;
  if (name == "recall") return r.recall;
  if (name == "f_measure") return r.f_measure;
  if (name == "mcc") return r.mcc;
  if (name == "auc") return r.auc.value_or(std::numeric_limits<double>::quiet_NaN());
  throw std::invalid_argument("unknown metric '" + std::string(name) + "'");
}

SweepReport ClassDistributionSweep(const corpus::Dataset& dataset, Algorithm algorithm,
                                   const std::vector<features::FeatureSpec>& specs,
                                   std::span<const double> human_fractions,
                                   std::size_t target_size, std::size_t k,
                                   std::uint64_t seed, const TrainParams& params,
                                   int jobs, std::size_t repeats) {
  if (human_fractions.empty()) throw std::invalid_argument("empty fraction list");
  if (repeats == 0) throw std::invalid_argument("sweep needs at least one repeat");
  SweepReport report;
  report.target_size = target_size;
  report.repeats = repeats;
  for (const double fraction : human_fractions) {
    SweepEntry entry;
    entry.human_fraction = fraction;
    double auc_sum = 0;
    for (std::size_t r = 0; r < repeats; ++r) {
      const std::uint64_t s = DeriveSeed(seed, {r});
      const corpus::Dataset mixture = corpus::Rebalance(dataset, fraction, target_size, s);
      CvReport cv = CrossValidate(algorithm, mixture, specs, k, s, params, jobs);
      entry.pooled += cv.pooled;
      auc_sum += cv.metrics.auc.value_or(0);
      entry.replicates.push_back(std::move(cv));
    }
    entry.metrics = metrics::Summarize(entry.pooled);
    entry.metrics.auc = auc_sum / static_cast<double>(repeats);
    report.entries.push_back(std::move(entry));
  }
  for (const std::string& name : SweepMetricNames()) {
    double best = -std::numeric_limits<double>::infinity();
    for (const SweepEntry& e : report.entries) {
      const double v = MetricByName(e.metrics, name);
      if (v > best) {
        best = v;
        report.best_fraction[name] = e.human_fraction;
      }
    }
  }
  return report;
}

std::size_t MaxSweepSize(const corpus::Dataset& dataset,
                         std::span<const double> human_fractions) {
  const auto humans = static_cast<double>(dataset.CountLabel(Label::kHuman));
  const auto fakes = static_cast<double>(dataset.CountLabel(Label::kFake));
  auto fits = [&](std::size_t t) {
    for (const double f : human_fractions) {
      const auto h = static_cast<double>(std::llround(static_cast<double>(t) * f));
      if (h > humans || static_cast<double>(t) - h > fakes) return false;
    }
    return true;
  };
  std::size_t t = static_cast<std::size_t>(humans + fakes);
  while (t > 0 && !fits(t)) --t;
  return t;
}

std::vector<double> ParseFractions(std::string_view text) {
  std::vector<double> out;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) {
      throw std::invalid_argument("bad fraction '" + s + "'");
    }
    return v;
  };
  const std::string s = Trim(text);
  if (s.find(':') != std::string::npos) {
    const auto a = s.find(':');
    const auto b = s.find(':', a + 1);
    if (b == std::string::npos) {
      throw std::invalid_argument("fraction range must be start:stop:step");
    }
    const double start = number(s.substr(0, a));
    const double stop = number(s.substr(a + 1, b - a - 1));
    const double step = number(s.substr(b + 1));
    if (!(step > 0) || stop < start) {
      throw std::invalid_argument("fraction range needs step > 0 and stop >= start");
    }
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < count; ++i) {
      const double v = start + static_cast<double>(i) * step;
      out.push_back(static_cast<double>(std::llround(v * 1e9)) / 1e9);
    }
  } else {
    std::size_t begin = 0;
    while (begin <= s.size()) {
      const auto end = std::min(s.find(',', begin), s.size());
      const std::string item = Trim(s.substr(begin, end - begin));
      if (!item.empty()) out.push_back(number(item));
      begin = end + 1;
    }
  }
  if (out.empty()) throw std::invalid_argument("empty fraction list");
  for (const double v : out) {
    if (!(v > 0 && v < 1)) {
      throw std::invalid_argument("fractions must lie in (0, 1), got " + FormatDouble(v));
    }
  }
  return out;
}

void WriteSweepCsv(std::ostream& out, const SweepReport& report) {
  std::vector<std::string> header = {"human_fraction", "size"};
  for (const std::string& n : SweepMetricNames()) header.push_back(n);
  WriteCsvRow(out, header);
  for (const SweepEntry& e : report.entries) {
    std::vector<std::string> cells = {FormatDouble(e.human_fraction),
                                      std::to_string(report.target_size)};
    for (const std::string& n : SweepMetricNames()) {
      cells.push_back(FormatDouble(MetricByName(e.metrics, n)));
    }
    WriteCsvRow(out, cells);
  }
  std::vector<std::string> best = {"best", ""};
  for (const std::string& n : SweepMetricNames()) {
    best.push_back(FormatDouble(report.best_fraction.at(n)));
  }
  WriteCsvRow(out, best);
}

std::string SweepJson(const SweepReport& report) {
  json entries = json::array();
  for (const SweepEntry& e : report.entries) {
    json replicates = json::array();
    for (const CvReport& cv : e.replicates) replicates.push_back(CvReportJson(cv));
    entries.push_back({{"human_fraction", e.human_fraction},
                       {"pooled", ConfusionJson(e.pooled)},
                       {"metrics", MetricsJson(e.metrics)},
                       {"replicates", replicates}});
  }
  json best = json::object();
  for (const auto& [name, f] : report.best_fraction) best[name] = f;
  return json({{"target_size", report.target_size},
               {"repeats", report.repeats},
               {"entries", entries},
               {"best_fraction", best}})
             .dump(2) +
         "\n";
}

}  // namespace fakescope::learn
