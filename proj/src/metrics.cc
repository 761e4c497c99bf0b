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

#include "fakescope/metrics.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace fakescope::metrics {
namespace {

bool Positive(Label label) {
  if (label == Label::kUnlabeled) {
    throw std::invalid_argument("metrics require labeled samples");
  }
  return label == Label::kFake;
}

void RequireSameSize(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("length mismatch");
}

double Ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

double XLog2X(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace

void ConfusionMatrix::Add(Label actual, Label predicted) {
  const bool a = Positive(actual);
  const bool p = Positive(predicted);
  if (a && p) ++tp;
  if (!a && !p) ++tn;
  if (!a && p) ++fp;
  if (a && !p) ++fn;
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  tp += other.tp;
  tn += other.tn;
  fp += other.fp;
  fn += other.fn;
  return *this;
}

ConfusionMatrix ConfusionMatrix::FromPredictions(
    std::span<const Label> actual, std::span<const Label> predicted) {
  RequireSameSize(actual.size(), predicted.size());
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < actual.size(); ++i) cm.Add(actual[i], predicted[i]);
  return cm;
}

double Mcc(const ConfusionMatrix& cm) {
  const auto tp = static_cast<long double>(cm.tp);
  const auto tn = static_cast<long double>(cm.tn);
  const auto fp = static_cast<long double>(cm.fp);
  const auto fn = static_cast<long double>(cm.fn);
  const long double d1 = tp + fn, d2 = tp + fp, d3 = tn + fp, d4 = tn + fn;
  if (d1 == 0 || d2 == 0 || d3 == 0 || d4 == 0) return 0.0;
  return static_cast<double>((tp * tn - fp * fn) /
                             std::sqrt(d1 * d2 * d3 * d4));
}

MetricsReport Summarize(const ConfusionMatrix& cm) {
  if (cm.tp < 0 || cm.tn < 0 || cm.fp < 0 || cm.fn < 0) {
    throw std::invalid_argument("confusion matrix counts must be >= 0");
  }
  if (cm.total() == 0) throw std::invalid_argument("empty confusion matrix");
  MetricsReport r;
  const auto tp = static_cast<double>(cm.tp);
  const auto fp = static_cast<double>(cm.fp);
  const auto fn = static_cast<double>(cm.fn);
  r.accuracy = static_cast<double>(cm.tp + cm.tn) /
               static_cast<double>(cm.total());
  r.precision = Ratio(tp, tp + fp);
  r.recall = Ratio(tp, tp + fn);
  r.f_measure = Ratio(2 * r.precision * r.recall, r.precision + r.recall);
  r.mcc = Mcc(cm);
  return r;
}

RocCurve RocAuc(std::span<const double> scores, std::span<const Label> labels) {
  RequireSameSize(scores.size(), labels.size());
  std::size_t n_pos = 0;
  for (const Label l : labels) n_pos += Positive(l);
  const std::size_t n_neg = labels.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw std::invalid_argument("ROC/AUC requires both classes");
  }
  for (const double s : scores) {
    if (!std::isfinite(s)) throw std::invalid_argument("non-finite score");
  }
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  // Midrank sum of positives, ranking ascending.
  long double rank_sum = 0;
  std::size_t tp = 0, fp = 0;
  const std::size_t n = order.size();
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    std::size_t group_pos = 0;
    while (j < n && scores[order[j]] == scores[order[i]]) {
      group_pos += IsFake(labels[order[j]]);
      ++j;
    }
    // Descending positions i..j-1 are ascending ranks n-j+1..n-i.
    const long double midrank =
        (static_cast<long double>(n - j + 1) + static_cast<long double>(n - i)) /
        2.0L;
    rank_sum += midrank * static_cast<long double>(group_pos);
    tp += group_pos;
    fp += (j - i) - group_pos;
    curve.points.push_back({scores[order[i]],
                            static_cast<double>(fp) / static_cast<double>(n_neg),
                            static_cast<double>(tp) / static_cast<double>(n_pos)});
    i = j;
  }
  const long double np = static_cast<long double>(n_pos);
  const long double u = rank_sum - np * (np + 1) / 2.0L;
  curve.auc = static_cast<double>(u / (np * static_cast<long double>(n_neg)));
  return curve;
}

double Auc(std::span<const double> scores, std::span<const Label> labels) {
  return RocAuc(scores, labels).auc;
}

double Entropy(double positive, double negative) {
  const double total = positive + negative;
  if (total <= 0.0) return 0.0;
  return -(XLog2X(positive / total) + XLog2X(negative / total));
}

double LabelEntropy(std::span<const Label> labels) {
  double pos = 0;
  for (const Label l : labels) pos += Positive(l);
  return Entropy(pos, static_cast<double>(labels.size()) - pos);
}

ThresholdSplit BestThresholdSplit(std::span<const double> values,
                                  std::span<const Label> labels,
                                  std::span<const double> weights) {
  RequireSameSize(values.size(), labels.size());
  if (!weights.empty()) RequireSameSize(values.size(), weights.size());
  auto weight = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  double total_pos = 0, total_neg = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    (Positive(labels[i]) ? total_pos : total_neg) += weight(i);
  }
  const double total = total_pos + total_neg;
  ThresholdSplit best;
  if (total <= 0.0) return best;
  const double parent = Entropy(total_pos, total_neg);
  double left_pos = 0, left_neg = 0;
  for (std::size_t k = 0; k + 1 < order.size(); ++k) {
    const std::size_t i = order[k];
    (IsFake(labels[i]) ? left_pos : left_neg) += weight(i);
    const double v = values[i];
    const double next = values[order[k + 1]];
    if (next == v) continue;
    const double left = left_pos + left_neg;
    const double right = total - left;
    const double cond = (left / total) * Entropy(left_pos, left_neg) +
                        (right / total) *
                            Entropy(total_pos - left_pos, total_neg - left_neg);
    const double gain = std::max(0.0, parent - cond);
    if (!best.valid || gain > best.gain) {
      best.gain = gain;
      best.threshold = v + (next - v) / 2.0;
      best.valid = true;
    }
  }
  return best;
}

double InfoGain(std::span<const double> values, std::span<const Label> labels) {
  return BestThresholdSplit(values, labels).gain;
}

double InfoGainDiscrete(std::span<const double> values,
                        std::span<const Label> labels) {
  RequireSameSize(values.size(), labels.size());
  if (values.empty()) return 0.0;
  std::map<double, std::pair<double, double>> groups;
  double pos = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const bool p = Positive(labels[i]);
    pos += p;
    auto& g = groups[values[i]];
    (p ? g.first : g.second) += 1;
  }
  const auto n = static_cast<double>(values.size());
  double cond = 0;
  for (const auto& [v, g] : groups) {
    cond += (g.first + g.second) / n * Entropy(g.first, g.second);
  }
  return std::max(0.0, Entropy(pos, n - pos) - cond);
}

PearsonResult Pearson(std::span<const double> x, std::span<const double> y) {
  RequireSameSize(x.size(), y.size());
  PearsonResult r;
  const std::size_t n = x.size();
  if (n < 2) {
    r.degenerate = true;
    return r;
  }
  long double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<long double>(n);
  my /= static_cast<long double>(n);
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const long double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) {
    r.degenerate = true;
    return r;
  }
  r.r = static_cast<double>(sxy / std::sqrt(sxx * syy));
  r.r = std::clamp(r.r, -1.0, 1.0);
  return r;
}

PearsonResult PearsonWithLabels(std::span<const double> values,
                                std::span<const Label> labels) {
  std::vector<double> y;
  y.reserve(labels.size());
  for (const Label l : labels) y.push_back(Positive(l) ? 1.0 : 0.0);
  return Pearson(values, y);
}

}  // namespace fakescope::metrics
