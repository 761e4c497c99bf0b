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

// Acceptance checks. Prints one PASS/FAIL/SKIP line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "cc_fixtures.h"
#include "fakescope/cli.h"
#include "fakescope/corpus.h"
#include "fakescope/cost.h"
#include "fakescope/features.h"
#include "fakescope/learn.h"
#include "fakescope/metrics.h"
#include "fakescope/random.h"
#include "fakescope/rules.h"
#include "fakescope/sensitivity.h"
#include "fakescope/synth.h"
#include "fakescope/validation.h"
#include "oracles.h"

namespace fakescope::acceptance {
namespace {

namespace fs = std::filesystem;
using features::FeatureMatrix;
using learn::Algorithm;

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status = Status::kPass;
  std::string detail;
};

// Collects failed checks of one criterion.
class Checker {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void Note(const std::string& text) { notes_.push_back(text); }
  void Skip(const std::string& why) {
    skipped_ = true;
    notes_.push_back(why);
  }
  Outcome Result() const {
    Outcome o;
    o.status = skipped_ && failures_.empty() ? Status::kSkip
               : failures_.empty()          ? Status::kPass
                                            : Status::kFail;
    std::vector<std::string> parts = notes_;
    for (const auto& f : failures_) parts.push_back("failed: " + f);
    for (std::size_t i = 0; i < parts.size(); ++i) o.detail += (i ? "; " : "") + parts[i];
    return o;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
  bool skipped_ = false;
};

std::string Fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << std::fixed << v;
  return s.str();
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<int> Positives(const std::vector<Label>& labels) {
  std::vector<int> out;
  for (const Label l : labels) out.push_back(IsFake(l));
  return out;
}

corpus::Dataset LoadCorpusDir(const fs::path& dir) {
  const corpus::Format format = fs::exists(dir / "users.jsonl") ? corpus::Format::kJson
                                                                 : corpus::Format::kCsv;
  return corpus::LoadDataset(corpus::CorpusPaths::InDirectory(dir, format), format);
}

// 1. Metrics against brute-force oracles.
void MetricsOracle(Checker& c) {
  const auto start = std::chrono::steady_clock::now();
  constexpr double kTol = 1e-12;
  Rng rng(2024);
  double worst = 0;
  auto track = [&](double a, double b) { worst = std::max(worst, std::abs(a - b)); };
  for (int trial = 0; trial < 1000; ++trial) {
    metrics::ConfusionMatrix cm;
    cm.tp = static_cast<std::int64_t>(rng.UniformInt(50));
    cm.tn = static_cast<std::int64_t>(rng.UniformInt(50));
    cm.fp = static_cast<std::int64_t>(rng.UniformInt(50));
    cm.fn = static_cast<std::int64_t>(rng.UniformInt(50)) + 1;
    const oracle::Counts k{double(cm.tp), double(cm.tn), double(cm.fp), double(cm.fn)};
    const metrics::MetricsReport r = metrics::Summarize(cm);
    track(r.accuracy, oracle::Accuracy(k));
    track(r.precision, oracle::Precision(k));
    track(r.recall, oracle::Recall(k));
    track(r.f_measure, oracle::FMeasure(k));
    track(r.mcc, oracle::Mcc(k));

    const std::size_t n = 2 + rng.UniformInt(11);
    std::vector<double> scores(n);
    std::vector<double> values(n);
    std::vector<Label> labels(n);
    std::vector<double> label_values(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = static_cast<double>(rng.UniformInt(7)) / 6.0;
      values[i] = rng.Bernoulli(0.5) ? rng.Uniform(-2, 2) : double(rng.UniformInt(4));
      labels[i] = rng.Bernoulli(0.5) ? Label::kFake : Label::kHuman;
    }
    labels[rng.UniformInt(n)] = Label::kFake;
    std::size_t human = rng.UniformInt(n);
    while (IsFake(labels[human]) && std::count_if(labels.begin(), labels.end(), IsFake) == 1) {
      human = rng.UniformInt(n);
    }
    if (std::count_if(labels.begin(), labels.end(), IsFake) == static_cast<long>(n)) {
      labels[human] = Label::kHuman;
    }
    for (std::size_t i = 0; i < n; ++i) label_values[i] = IsFake(labels[i]) ? 1.0 : 0.0;
    track(metrics::RocAuc(scores, labels).auc, oracle::PairwiseAuc(scores, Positives(labels)));
    track(metrics::InfoGain(values, labels),
          oracle::ExhaustiveInfoGain(values, Positives(labels)));
    track(metrics::PearsonWithLabels(values, labels).r, oracle::Pearson(values, label_values));
  }
  const double secs = Seconds(start);
  std::ostringstream err;
  err << std::scientific << std::setprecision(2) << worst;
  c.Note("1000 trials, max abs error " + err.str());
  c.Note("time " + Fmt(secs, 2) + " s");
  c.Expect(worst <= kTol, "error above 1e-12");
  c.Expect(secs < 5, "runtime >= 5 s");
}

// 2. Hand-traced CC accounts.
void CcFixtures(Checker& c) {
  const auto start = std::chrono::steady_clock::now();
  const corpus::Dataset d = fixtures::CcFixtureDataset();
  const rules::DatasetAggregates agg(d);
  const rules::RuleConfig config;
  struct Case {
    UserId id;
    int score;
    rules::Verdict verdict;
    const char* name;
  };
  const Case cases[] = {{fixtures::kAllSatisfied, 25, rules::Verdict::kHuman, "all satisfied"},
                        {fixtures::kAllFailedApi, -19, rules::Verdict::kBot, "all failed, API"},
                        {fixtures::kZeroScore, 0, rules::Verdict::kNeutral, "score 0"}};
  for (const Case& k : cases) {
    const rules::CcScore s = rules::CcClassify({d, *d.find(k.id), agg, config});
    c.Note(std::string(k.name) + " -> " + std::to_string(s.score) + " " +
           std::string(rules::VerdictName(s.verdict)));
    c.Expect(s.score == k.score && s.verdict == k.verdict, k.name);
  }
  c.Expect(Seconds(start) < 1, "runtime >= 1 s");
}

// 3. Crawling cost.
void CostModel(Checker& c) {
  const cost::CostEstimate e =
      cost::Estimate(cost::TargetProfile::Uniform(100, {450, 4000, 4000}));
  c.Note("calls (" + std::to_string(e.calls_profile) + ", " + std::to_string(e.calls_timeline) +
         ", " + std::to_string(e.calls_relationship) + "), minutes " + Fmt(e.minutes_total, 3));
  c.Expect(e.calls_profile == 1 && e.calls_timeline == 300 && e.calls_relationship == 200,
           "call counts");
  c.Expect(e.minutes_total == 200.0, "total minutes");
  c.Expect(e.minutes_timeline == 25.0 && e.minutes_profile == 1.0 / 12.0, "class minutes");
  const cost::Bounds b = cost::ComputeBounds(1000);
  c.Expect(b.best.profile == 10 && b.best.timeline == 1000 && b.best.relationship == 2000,
           "best-case row");
  c.Expect(b.worst.profile == 10 && b.worst.timeline == 16000 && !b.worst.relationship,
           "worst-case row");
  c.Expect(b.relationship_worst_note == "unpredictable", "unpredictable flag");
  const cost::Bounds zero = cost::ComputeBounds(0);
  c.Expect(zero.best.profile == 0 && zero.best.timeline == 0 && zero.best.relationship == 0,
           "f = 0 bounds");
  c.Expect(cost::Estimate(cost::TargetProfile::Uniform(1, {3200, 0, 0})).calls_timeline == 16,
           "16 timeline calls at 3200 tweets");
  const cost::HeavyFollowerScenario h = cost::HeavyFollowerWorstCase();
  c.Note("60M/60M follower: " + std::to_string(h.calls_per_follower) + " calls (quoted " +
         std::to_string(h.quoted_calls_per_follower) + ")");
  c.Expect(h.calls_per_follower == 24000, "heavy follower formula value");
}

std::vector<Label> Shuffled(std::vector<Label> labels, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t i = labels.size(); i > 1; --i) {
    std::swap(labels[i - 1], labels[rng.UniformInt(i)]);
  }
  return labels;
}

const corpus::Dataset& PaperLikeCorpus() {
  static const corpus::Dataset d = corpus::Synthesize(corpus::SynthConfig::PaperLike(7));
  return d;
}

// 4. Classifier sanity on the synthetic corpus.
void ClassifierSanity(Checker& c) {
  const auto start = std::chrono::steady_clock::now();
  const corpus::Dataset& d = PaperLikeCorpus();
  features::ExtractOptions extract;
  const FeatureMatrix yang = features::Extract(d, features::NamedFeatureSet("yang"), extract);
  const FeatureMatrix class_a =
      features::Extract(d, features::Catalog(features::CostClass::kA), extract);
  const learn::CvReport rf = learn::CrossValidate(Algorithm::kRF, yang, 10, 7);
  const learn::CvReport dt = learn::CrossValidate(Algorithm::kDT, class_a, 10, 7);
  const FeatureMatrix shuffled = class_a.WithLabels(Shuffled(class_a.labels, 99));
  const learn::CvReport null_dt = learn::CrossValidate(Algorithm::kDT, shuffled, 10, 7);
  const learn::CvReport null_rf = learn::CrossValidate(Algorithm::kRF, yang.WithLabels(
                                                          Shuffled(yang.labels, 98)), 10, 7);
  const double secs = Seconds(start);
  c.Note(std::to_string(d.size()) + " accounts");
  c.Note("RF yang MCC " + Fmt(rf.metrics.mcc));
  c.Note("DT class-A MCC " + Fmt(dt.metrics.mcc));
  c.Note("shuffled DT MCC " + Fmt(null_dt.metrics.mcc) + ", RF " + Fmt(null_rf.metrics.mcc));
  c.Note("time " + Fmt(secs, 1) + " s");
  c.Expect(rf.metrics.mcc >= 0.95, "RF yang MCC >= 0.95");
  c.Expect(dt.metrics.mcc >= 0.90, "DT class-A MCC >= 0.90");
  c.Expect(std::abs(null_dt.metrics.mcc) <= 0.1 && std::abs(null_rf.metrics.mcc) <= 0.1,
           "shuffled |MCC| <= 0.1");
  c.Expect(secs < 60, "runtime >= 60 s");
}

FeatureMatrix RandomMatrix(std::size_t n, std::size_t d, std::size_t informative, double shift,
                           double flip, std::uint64_t seed) {
  Rng rng(seed);
  FeatureMatrix m;
  for (std::size_t j = 0; j < d; ++j) {
    features::FeatureSpec s;
    s.id = s.name = "x" + std::to_string(j);
    m.specs.push_back(s);
  }
  for (std::size_t r = 0; r < n; ++r) {
    const bool fake = r % 2 == 1;
    for (std::size_t j = 0; j < d; ++j) {
      m.values.push_back(rng.Normal() + (j < informative && fake ? shift : 0.0));
    }
    m.ids.push_back(r + 1);
    m.labels.push_back(fake != rng.Bernoulli(flip) ? Label::kFake : Label::kHuman);
  }
  return m;
}

// 5. Pruning.
void Pruning(Checker& c) {
  Rng rng(5);
  int violations = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 80 + rng.UniformInt(300);
    const std::size_t d = 1 + rng.UniformInt(6);
    const FeatureMatrix m = RandomMatrix(n, d, 1 + rng.UniformInt(d), rng.Uniform(0, 2),
                                         rng.Uniform(0, 0.4), rng.NextU64());
    std::vector<std::size_t> grow;
    std::vector<std::size_t> holdout;
    for (std::size_t r = 0; r < n; ++r) (rng.Bernoulli(1.0 / 3) ? holdout : grow).push_back(r);
    learn::TreeOptions options;
    options.min_leaf = 1 + static_cast<int>(rng.UniformInt(3));
    const learn::DecisionTree tree = learn::GrowTree(m, grow, {}, options);
    const learn::DecisionTree pruned = learn::PruneReducedError(tree, m, holdout);
    violations += learn::ComputeTreeStats(pruned).nodes > learn::ComputeTreeStats(tree).nodes;
  }
  c.Note("node count grew in " + std::to_string(violations) + " of 100 trees");
  c.Expect(violations == 0, "reduced-error pruning grew a tree");

  // Noisy fixture: the synthetic corpus with 10% of the labels flipped.
  const corpus::Dataset& d = PaperLikeCorpus();
  FeatureMatrix m = features::Extract(d, features::Catalog(features::CostClass::kA));
  Rng flip(17);
  for (Label& l : m.labels) {
    if (flip.Bernoulli(0.1)) l = IsFake(l) ? Label::kHuman : Label::kFake;
  }
  const learn::CvReport plain = learn::CrossValidate(Algorithm::kDT, m, 10, 7);
  for (const learn::PruneStrategy s :
       {learn::PruneStrategy::kReducedError, learn::PruneStrategy::kSubtreeRaising}) {
    learn::TrainParams p;
    p.prune.strategy = s;
    const learn::CvReport pruned = learn::CrossValidate(Algorithm::kDT, m, 10, 7, p);
    const learn::TrainedModel full = learn::Train(Algorithm::kDT, m, {}, 7);
    const learn::TrainedModel small = learn::Train(Algorithm::kDT, m, p, 7);
    c.Note(std::string(learn::PruneStrategyName(s)) + ": MCC " + Fmt(plain.metrics.mcc) +
           " -> " + Fmt(pruned.metrics.mcc) + ", nodes " +
           std::to_string(learn::ComputeTreeStats(full.tree()).nodes) + " -> " +
           std::to_string(learn::ComputeTreeStats(small.tree()).nodes));
    c.Expect(plain.metrics.mcc - pruned.metrics.mcc <= 0.05,
             std::string(learn::PruneStrategyName(s)) + " MCC drop > 0.05");
    c.Expect(learn::ComputeTreeStats(small.tree()).nodes <
                 learn::ComputeTreeStats(full.tree()).nodes,
             std::string(learn::PruneStrategyName(s)) + " did not shrink the tree");
  }
}

// One label-copy column, 17 uniform noise columns and a constant column.
FeatureMatrix SignalNoiseConstant(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  FeatureMatrix m;
  auto spec = [&](const std::string& name) {
    features::FeatureSpec s;
    s.id = s.name = name;
    m.specs.push_back(s);
  };
  spec("signal");
  for (int i = 1; i <= 17; ++i) spec("noise" + std::to_string(i));
  spec("constant");
  for (std::size_t r = 0; r < n; ++r) {
    const Label l = r % 2 ? Label::kFake : Label::kHuman;
    m.values.push_back(IsFake(l) ? 1.0 : 0.0);
    for (int i = 1; i <= 17; ++i) m.values.push_back(rng.Uniform());
    m.values.push_back(3.0);
    m.ids.push_back(r + 1);
    m.labels.push_back(l);
  }
  return m;
}

// 6. Sensitivity.
void Sensitivity(Checker& c) {
  const auto start = std::chrono::steady_clock::now();
  const FeatureMatrix train = SignalNoiseConstant(600, 1);
  const FeatureMatrix test = SignalNoiseConstant(300, 2);
  sensitivity::AnalyzeOptions o;
  o.seed = 7;
  o.jobs = 1;
  const sensitivity::SensitivityReport one = sensitivity::Analyze(train, test, o);
  o.jobs = 4;
  const sensitivity::SensitivityReport four = sensitivity::Analyze(train, test, o);
  const double secs = Seconds(start);
  const std::size_t constant = train.cols() - 1;
  double max_noise = 0;
  for (std::size_t i = 1; i < train.cols(); ++i) max_noise = std::max(max_noise, one.normalized[i]);
  bool constant_lowest = true;
  for (std::size_t i = 0; i < constant; ++i) {
    constant_lowest = constant_lowest && one.normalized[constant] <= one.normalized[i];
  }
  c.Note(std::to_string(train.cols()) + " features x " + std::to_string(o.algorithms.size()) +
         " algorithms");
  c.Note("signal " + Fmt(one.normalized[0], 3) + ", max other " + std::to_string(max_noise) +
         ", constant rank " +
         std::to_string(std::find(one.ranking.begin(), one.ranking.end(), constant) -
                        one.ranking.begin() + 1));
  c.Note("time " + Fmt(secs, 1) + " s");
  c.Expect(one.ranking.front() == 0 && one.normalized[0] == 1.0, "signal not first with 1");
  c.Expect(max_noise < 0.5, "a noise feature scored >= 0.5");
  c.Expect(one.ranking.back() == constant && constant_lowest, "constant not last");
  c.Expect(sensitivity::SensitivityJson(one) == sensitivity::SensitivityJson(four),
           "jobs 1 and 4 differ");
  c.Expect(secs < 300, "runtime >= 5 min");
}

// 7. Class-distribution sweep.
void Sweep(Checker& c) {
  const auto start = std::chrono::steady_clock::now();
  const corpus::Dataset& d = PaperLikeCorpus();
  const std::vector<double> fractions = learn::ParseFractions("0.05:0.95:0.05");
  const std::size_t size = learn::MaxSweepSize(d, fractions);
  const learn::SweepReport r = learn::ClassDistributionSweep(
      d, Algorithm::kDT, features::Catalog(features::CostClass::kA), fractions, size, 10, 7, {},
      1, 5);
  const double best = r.best_fraction.at("mcc");
  std::string curve;
  for (const learn::SweepEntry& e : r.entries) {
    if (std::abs(e.human_fraction - 0.5) < 0.26) {
      curve += (curve.empty() ? "" : " ") + Fmt(e.human_fraction, 2) + ":" + Fmt(e.metrics.mcc, 3);
    }
  }
  c.Note("size " + std::to_string(size) + ", 5 mixtures per fraction");
  c.Note("best MCC at " + Fmt(best, 2) + " [" + curve + "]");
  c.Note("time " + Fmt(Seconds(start), 1) + " s");
  c.Expect(std::abs(best - 0.5) <= 0.05 + 1e-9, "best fraction more than one step from 0.5");
}

std::map<std::string, std::string> Tree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  if (!fs::exists(dir)) return files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files[fs::relative(e.path(), dir).string()] = s.str();
  }
  return files;
}

// 8. Every command twice with the same seed.
void Determinism(Checker& c) {
  const fs::path root =
      fs::temp_directory_path() / ("fakescope_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  auto run = [&](const std::vector<std::string>& args, std::string& stdout_text) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::Run(args, out, err);
    stdout_text = out.str();
    return code;
  };
  const std::string corpus = (root / "corpus").string();
  std::string ignored;
  if (run({"synth", "--preset", "paper-like", "--humans", "150", "--fakes", "150", "--seed",
           "11", "--out", corpus},
          ignored) != cli::kExitOk) {
    c.Expect(false, "synth failed");
    return;
  }
  const std::string model = (root / "model" / "model.json").string();
  run({"train", "--algo", "rf", "--trees", "20", "--seed", "3", "--out",
       (root / "model").string(), corpus},
      ignored);
  struct Command {
    std::string name;
    std::vector<std::string> args;
  };
  const std::vector<Command> commands = {
      {"synth", {"synth", "--preset", "paper-like", "--humans", "40", "--fakes", "40"}},
      {"ingest", {"ingest", "--format", "json", corpus}},
      {"validate", {"validate", corpus}},
      {"rules", {"rules", "--ruleset", "all", corpus}},
      {"rules --report", {"rules", "--report", "--ruleset", "all", corpus}},
      {"features", {"features", "--class", "all", "--format", "json", corpus}},
      {"train", {"train", "--algo", "ab", "--rounds", "20", corpus}},
      {"predict", {"predict", "--model", model, corpus}},
      {"cv", {"cv", "--algo", "rf", "--trees", "20", "--jobs", "2", corpus}},
      {"sweep", {"sweep", "--algo", "dt", "--fractions", "0.4,0.5,0.6", "--k", "5", "--repeats",
                 "2", corpus}},
      {"cost", {"cost", "--followers", "1000", "--tweets-per-follower", "450",
                "--relations-per-follower", "4000"}},
      {"sensitivity", {"sensitivity", "--algos", "dt,rf,nb", "--trees", "10", "--jobs", "2",
                       corpus}},
  };
  std::vector<std::string> differing;
  for (const Command& cmd : commands) {
    std::map<std::string, std::string> trees[2];
    std::string stdout_text[2];
    int codes[2];
    for (int i = 0; i < 2; ++i) {
      const fs::path out = root / "runs" / (cmd.name + "_" + std::to_string(i));
      std::vector<std::string> args = cmd.args;
      args.insert(args.begin() + 1, {"--seed", "7", "--out", out.string()});
      codes[i] = run(args, stdout_text[i]);
      trees[i] = Tree(out);
    }
    if (codes[0] != cli::kExitOk || codes[1] != cli::kExitOk || trees[0].empty() ||
        trees[0] != trees[1] || stdout_text[0] != stdout_text[1]) {
      differing.push_back(cmd.name + " (exit " + std::to_string(codes[0]) + "/" +
                          std::to_string(codes[1]) + ")");
    }
  }
  // A manifest replay reproduces the recorded digests.
  std::string replay_out;
  const int replay = run({"replay", (root / "runs" / "cv_0" / "manifest.json").string(), "--out",
                          (root / "replayed").string()},
                         replay_out);
  c.Note(std::to_string(commands.size()) + " commands compared byte for byte, replay exit " +
         std::to_string(replay));
  for (const auto& name : differing) c.Expect(false, name);
  c.Expect(replay == cli::kExitOk, "replay did not reproduce the manifest digests");
  std::error_code ec;
  fs::remove_all(root, ec);
}

// 9. Reproduction on the public baseline dataset, when present.
void PublicDataset(Checker& c) {
  const char* bas = std::getenv("FAKESCOPE_BAS_DIR");
  const char* tfp = std::getenv("FAKESCOPE_TFP_DIR");
  if (bas == nullptr && tfp == nullptr) {
    c.Skip("set FAKESCOPE_BAS_DIR (and FAKESCOPE_TFP_DIR) to an ingested copy of the public "
           "corpus to run this tier");
    return;
  }
  if (bas != nullptr) {
    const corpus::Dataset d = LoadCorpusDir(bas);
    const auto rows = rules::RuleReport(d, {}, 4, rules::RuleSet::kCC);
    const double mcc5 = rows[4].metrics.mcc;
    c.Note("followers >= 30 MCC " + Fmt(mcc5, 3));
    c.Expect(std::abs(mcc5 - 0.768) <= 0.02, "followers >= 30 MCC outside 0.768 +- 0.02");
    const learn::CvReport rf =
        learn::CrossValidate(Algorithm::kRF, d, features::NamedFeatureSet("yang"), 10, 7, {}, 4);
    c.Note("RF yang MCC " + Fmt(rf.metrics.mcc, 3));
    c.Expect(rf.metrics.mcc >= 0.95, "RF yang MCC < 0.95");
  } else {
    c.Note("FAKESCOPE_BAS_DIR unset, rule and RF checks not run");
  }
  if (tfp != nullptr) {
    const corpus::Dataset d = LoadCorpusDir(tfp);
    const rules::VerdictTable t = rules::RunRuleset(rules::RuleSet::kCC, d, {}, 4);
    int counts[3] = {0, 0, 0};
    for (const rules::CcScore& s : t.cc) ++counts[static_cast<int>(s.verdict)];
    const int human = counts[static_cast<int>(rules::Verdict::kHuman)];
    const int bot = counts[static_cast<int>(rules::Verdict::kBot)];
    const int neutral = counts[static_cast<int>(rules::Verdict::kNeutral)];
    c.Note("CC on TFP " + std::to_string(human) + "/" + std::to_string(bot) + "/" +
           std::to_string(neutral));
    c.Expect(std::abs(human - 456) <= 5 && std::abs(bot - 3) <= 5 && std::abs(neutral - 10) <= 5,
             "CC verdict counts outside 456/3/10 +- 5");
  } else {
    c.Note("FAKESCOPE_TFP_DIR unset, CC verdict counts not run");
  }
}

int RunAll() {
  struct Criterion {
    int number;
    const char* title;
    std::function<void(Checker&)> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "metrics match brute-force oracles", MetricsOracle},
      {2, "CC fixtures classify exactly", CcFixtures},
      {3, "cost model worked example and bounds", CostModel},
      {4, "classifier sanity on the synthetic corpus", ClassifierSanity},
      {5, "pruning keeps size and MCC in check", Pruning},
      {6, "sensitivity ranks signal first, constant last", Sensitivity},
      {7, "class-distribution sweep peaks near balance", Sweep},
      {8, "commands are byte-for-byte deterministic", Determinism},
      {9, "public dataset reproduction", PublicDataset},
  };
  int failed = 0;
  for (const Criterion& k : criteria) {
    Checker checker;
    try {
      k.body(checker);
    } catch (const std::exception& e) {
      checker.Expect(false, std::string("exception: ") + e.what());
    }
    const Outcome o = checker.Result();
    const char* tag = o.status == Status::kPass   ? "[PASS]"
                      : o.status == Status::kSkip ? "[SKIP]"
                                                  : "[FAIL]";
    failed += o.status == Status::kFail;
    std::cout << tag << " " << k.number << ". " << k.title << ": " << o.detail << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria passed or skipped" : std::to_string(failed) + " failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace fakescope::acceptance

int main() { return fakescope::acceptance::RunAll(); }
