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

#include "fakescope/learn.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "fakescope/metrics.h"
#include "fakescope/random.h"
#include "test_util.h"

namespace fakescope::learn {
namespace {

using features::FeatureMatrix;
using testing::FlipLabels;
using testing::MatrixFromRows;
using testing::RandomMatrix;

std::vector<std::size_t> AllRows(const FeatureMatrix& m) {
  std::vector<std::size_t> rows(m.rows());
  std::iota(rows.begin(), rows.end(), 0);
  return rows;
}

double MccOn(const TrainedModel& model, const FeatureMatrix& test) {
  metrics::ConfusionMatrix cm;
  const auto p = model.PredictAll(test);
  for (std::size_t r = 0; r < test.rows(); ++r) cm.Add(test.labels[r], p[r].label);
  return metrics::Mcc(cm);
}

std::size_t HoldoutErrors(const DecisionTree& tree, const FeatureMatrix& m,
                          const std::vector<std::size_t>& rows) {
  std::size_t errors = 0;
  for (const std::size_t r : rows) errors += tree.Classify(m.row(r)) != m.labels[r];
  return errors;
}

TEST(Names, RoundTrip) {
  for (const Algorithm a : AllAlgorithms()) EXPECT_EQ(ParseAlgorithm(AlgorithmName(a)), a);
  EXPECT_EQ(AllAlgorithms().size(), 6u);
  EXPECT_THROW(ParseAlgorithm("svm"), std::invalid_argument);
  EXPECT_EQ(ParsePruneStrategy("reduced-error"), PruneStrategy::kReducedError);
  EXPECT_THROW(ParsePruneStrategy("all"), std::invalid_argument);
}

TEST(Train, RejectsBadInput) {
  const FeatureMatrix one_class =
      MatrixFromRows({{1}, {2}}, {Label::kFake, Label::kFake});
  EXPECT_THROW(Train(Algorithm::kDT, one_class, {}, 1), std::invalid_argument);
  FeatureMatrix nan = MatrixFromRows({{1}, {NAN}}, {Label::kFake, Label::kHuman});
  EXPECT_THROW(Train(Algorithm::kNB, nan, {}, 1), std::invalid_argument);
  const FeatureMatrix ok = RandomMatrix(20, 2, 1, 3, 1);
  const TrainedModel model = Train(Algorithm::kDT, ok, {}, 1);
  EXPECT_THROW(model.Predict(std::vector<double>{1.0}), std::invalid_argument);
  EXPECT_THROW((void)model.ensemble(), std::exception);
}

TEST(DecisionTree, SeparableDataIsFitExactly) {
  const FeatureMatrix m = RandomMatrix(200, 4, 1, 20, 3);
  const TrainedModel model = Train(Algorithm::kDT, m, {}, 1);
  EXPECT_DOUBLE_EQ(MccOn(model, m), 1.0);
  const TreeStats s = ComputeTreeStats(model.tree());
  EXPECT_EQ(s.nodes, 3);
  EXPECT_EQ(s.leaves, 2);
  EXPECT_EQ(s.height, 2);
}

TEST(DecisionTree, ThresholdIsAMidpoint) {
  const FeatureMatrix m = MatrixFromRows(
      {{1}, {2}, {3}, {7}, {8}, {9}},
      {Label::kHuman, Label::kHuman, Label::kHuman, Label::kFake, Label::kFake, Label::kFake});
  const DecisionTree tree = GrowTree(m, AllRows(m), {}, {});
  ASSERT_FALSE(tree.nodes()[0].is_leaf());
  EXPECT_DOUBLE_EQ(tree.nodes()[0].threshold, 5.0);
  EXPECT_EQ(tree.Classify(std::vector<double>{4.9}), Label::kHuman);
  EXPECT_EQ(tree.Classify(std::vector<double>{5.1}), Label::kFake);
}

TEST(DecisionTree, MinLeafAppliesToBothChildren) {
  const FeatureMatrix m = MatrixFromRows(
      {{1}, {2}, {3}, {4}, {5}},
      {Label::kFake, Label::kHuman, Label::kHuman, Label::kHuman, Label::kHuman});
  TreeOptions options;
  options.min_leaf = 2;
  const DecisionTree tree = GrowTree(m, AllRows(m), {}, options);
  for (const TreeNode& n : tree.nodes()) {
    if (n.is_leaf()) EXPECT_GE(n.samples, 2);
  }
  options.min_leaf = 1;
  EXPECT_EQ(ComputeTreeStats(GrowTree(m, AllRows(m), {}, options)).leaves, 2);
}

TEST(DecisionTree, MaxDepthBoundsHeight) {
  const FeatureMatrix m = FlipLabels(RandomMatrix(300, 3, 3, 0.5, 4), 0.2, 5);
  TrainParams p;
  p.max_depth = 3;
  EXPECT_LE(ComputeTreeStats(Train(Algorithm::kDT, m, p, 1).tree()).height, 4);
}

// Applying a strictly increasing map to every column keeps the training
// partitions, so predictions on the training rows do not change.
TEST(DecisionTree, InvariantToMonotoneTransforms) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const FeatureMatrix m = FlipLabels(RandomMatrix(150, 4, 2, 1.0, seed), 0.1, seed + 100);
    FeatureMatrix t = m;
    for (double& v : t.values) v = std::exp(v / 2) * 3 + 1;
    const auto a = Train(Algorithm::kDT, m, {}, seed).PredictAll(m);
    const auto b = Train(Algorithm::kDT, t, {}, seed).PredictAll(t);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      ASSERT_EQ(a[r].label, b[r].label) << "seed " << seed << " row " << r;
      ASSERT_DOUBLE_EQ(a[r].score, b[r].score);
    }
    EXPECT_EQ(ComputeTreeStats(Train(Algorithm::kDT, m, {}, seed).tree()),
              ComputeTreeStats(Train(Algorithm::kDT, t, {}, seed).tree()));
  }
}

TEST(DecisionTree, RejectsMalformedLayouts) {
  TreeNode root;
  root.feature = 0;
  root.left = 1;
  root.right = 5;
  EXPECT_THROW(DecisionTree({root, TreeNode{}}), std::invalid_argument);
}

TEST(Pruning, NeverGrowsTreesAndNeverAddsHoldoutErrors) {
  Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 60 + rng.UniformInt(200);
    const std::size_t d = 1 + rng.UniformInt(5);
    const FeatureMatrix m =
        FlipLabels(RandomMatrix(n, d, 1 + rng.UniformInt(d), rng.Uniform(0, 2), rng.NextU64()),
                   rng.Uniform(0, 0.4), rng.NextU64());
    std::vector<std::size_t> grow;
    std::vector<std::size_t> holdout;
    for (std::size_t r = 0; r < n; ++r) (rng.Bernoulli(0.33) ? holdout : grow).push_back(r);
    TreeOptions options;
    options.min_leaf = 1 + static_cast<int>(rng.UniformInt(3));
    const DecisionTree tree = GrowTree(m, grow, {}, options);
    const DecisionTree rep = PruneReducedError(tree, m, holdout);
    const DecisionTree pes = PruneSubtreeRaising(tree, 0.25);
    const TreeStats full = ComputeTreeStats(tree);
    EXPECT_LE(ComputeTreeStats(rep).nodes, full.nodes);
    EXPECT_LE(ComputeTreeStats(pes).nodes, full.nodes);
    EXPECT_LE(HoldoutErrors(rep, m, holdout), HoldoutErrors(tree, m, holdout));
  }
}

TEST(Pruning, NoisyDataKeepsTestMcc) {
  const FeatureMatrix train = FlipLabels(RandomMatrix(800, 6, 2, 1.5, 21), 0.15, 22);
  const FeatureMatrix test = FlipLabels(RandomMatrix(800, 6, 2, 1.5, 23), 0.15, 24);
  const TrainedModel plain = Train(Algorithm::kDT, train, {}, 5);
  for (const PruneStrategy s : {PruneStrategy::kReducedError, PruneStrategy::kSubtreeRaising}) {
    TrainParams p;
    p.prune.strategy = s;
    const TrainedModel pruned = Train(Algorithm::kDT, train, p, 5);
    EXPECT_LT(ComputeTreeStats(pruned.tree()).nodes, ComputeTreeStats(plain.tree()).nodes);
    EXPECT_GE(MccOn(pruned, test), MccOn(plain, test) - 0.05) << PruneStrategyName(s);
  }
}

TEST(Pruning, PessimisticEstimateMatchesUpperBound) {
  // Upper end of the Wilson interval with continuity correction, z for 25%.
  const double z = 0.6744897501960817;
  for (const double n : {5.0, 12.0, 40.0, 300.0}) {
    for (const double e : {1.0, 2.0, 3.5}) {
      const double f = (e + 0.5) / n;
      const double upper =
          (f + z * z / (2 * n) + z * std::sqrt(f * (1 - f) / n + z * z / (4 * n * n))) /
          (1 + z * z / n);
      EXPECT_NEAR(PessimisticExtraErrors(n, e, 0.25), upper * n - e, 1e-9);
    }
    EXPECT_NEAR(PessimisticExtraErrors(n, 0, 0.25), n * (1 - std::pow(0.25, 1 / n)), 1e-12);
  }
  EXPECT_THROW(PessimisticExtraErrors(5, 1, 0.7), std::invalid_argument);
}

TEST(RandomForest, SingleTreeIsTheSeededBootstrapTree) {
  FeatureMatrix m = FlipLabels(RandomMatrix(120, 9, 3, 1.0, 31), 0.1, 32);
  for (std::size_t r = 0; r < m.rows(); ++r) m.values[r * m.cols() + 8] = 4.0;  // constant
  TrainParams p;
  p.trees = 1;
  const std::uint64_t seed = 99;
  const TrainedModel forest = Train(Algorithm::kRF, m, p, seed);
  TreeOptions options;
  options.min_leaf = p.forest_min_leaf;
  options.mtry = 3;  // ceil(sqrt(8 non-constant columns))
  options.seed = ForestTreeSeed(seed, 0);
  const DecisionTree expected = GrowTree(m, BootstrapSample(m.rows(), seed, 0), {}, options);
  ASSERT_EQ(forest.ensemble().size(), 1u);
  EXPECT_EQ(forest.ensemble()[0], expected);
}

TEST(RandomForest, BootstrapDrawsWithReplacement) {
  const auto a = BootstrapSample(1000, 5, 3);
  EXPECT_EQ(a, BootstrapSample(1000, 5, 3));
  EXPECT_NE(a, BootstrapSample(1000, 5, 4));
  std::vector<int> seen(1000, 0);
  for (const std::size_t r : a) ++seen[r];
  // About 1/e of the rows are left out.
  const auto missing = std::count(seen.begin(), seen.end(), 0);
  EXPECT_GT(missing, 320);
  EXPECT_LT(missing, 420);
}

TEST(RandomForest, JobsDoNotChangeTheModel) {
  const FeatureMatrix m = FlipLabels(RandomMatrix(200, 6, 2, 1.0, 41), 0.1, 42);
  TrainParams p;
  p.trees = 20;
  const TrainedModel one = Train(Algorithm::kRF, m, p, 3);
  p.jobs = 4;
  const TrainedModel four = Train(Algorithm::kRF, m, p, 3);
  EXPECT_EQ(one.ensemble(), four.ensemble());
}

TEST(AdaBoost, BeatsASingleStump) {
  // Fake iff both coordinates are positive: no single stump gets this.
  Rng rng(51);
  std::vector<std::vector<double>> x;
  std::vector<Label> y;
  for (int i = 0; i < 400; ++i) {
    const double a = rng.Uniform(-1, 1);
    const double b = rng.Uniform(-1, 1);
    x.push_back({a, b});
    y.push_back(a > 0 && b > 0 ? Label::kFake : Label::kHuman);
  }
  const FeatureMatrix m = MatrixFromRows(x, y);
  TrainParams p;
  p.rounds = 1;
  const double stump = MccOn(Train(Algorithm::kAB, m, p, 1), m);
  p.rounds = 50;
  const TrainedModel boosted = Train(Algorithm::kAB, m, p, 1);
  EXPECT_GT(MccOn(boosted, m), stump + 0.1);
  EXPECT_LE(boosted.ensemble().size(), 50u);
  for (const auto& pred : boosted.PredictAll(m)) {
    EXPECT_GE(pred.score, 0.0);
    EXPECT_LE(pred.score, 1.0);
  }
}

TEST(Knn, OneNeighborRecallsTrainingRows) {
  const FeatureMatrix m = FlipLabels(RandomMatrix(100, 3, 1, 0.5, 61), 0.3, 62);
  TrainParams p;
  p.k = 1;
  const auto preds = Train(Algorithm::kKNN, m, p, 1).PredictAll(m);
  for (std::size_t r = 0; r < m.rows(); ++r) EXPECT_EQ(preds[r].label, m.labels[r]);
}

TEST(Knn, ScoreIsTheFakeShareOfNeighbors) {
  const FeatureMatrix m = MatrixFromRows(
      {{0}, {1}, {2}, {10}, {11}},
      {Label::kFake, Label::kHuman, Label::kFake, Label::kHuman, Label::kHuman});
  TrainParams p;
  p.k = 3;
  const TrainedModel model = Train(Algorithm::kKNN, m, p, 1);
  EXPECT_NEAR(model.Predict(std::vector<double>{1}).score, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(model.Predict(std::vector<double>{10.5}).score, 1.0 / 3.0, 1e-12);
}

TEST(Knn, TiedVotesGoToFake) {
  const FeatureMatrix m =
      MatrixFromRows({{0}, {2}, {10}}, {Label::kHuman, Label::kFake, Label::kHuman});
  TrainParams p;
  p.k = 2;
  const Prediction pred = Train(Algorithm::kKNN, m, p, 1).Predict(std::vector<double>{1});
  EXPECT_DOUBLE_EQ(pred.score, 0.5);
  EXPECT_EQ(pred.label, Label::kFake);
}

TEST(NaiveBayes, SymmetricDataGivesOneHalf) {
  const FeatureMatrix m = MatrixFromRows(
      {{0, 1.5}, {1, 2.5}, {0, 1.5}, {1, 2.5}},
      {Label::kHuman, Label::kHuman, Label::kFake, Label::kFake});
  const TrainedModel model = Train(Algorithm::kNB, m, {}, 1);
  EXPECT_NEAR(model.Predict(std::vector<double>{1, 2.5}).score, 0.5, 1e-12);
  EXPECT_NEAR(model.Predict(std::vector<double>{0, 9}).score, 0.5, 1e-12);
}

TEST(NaiveBayes, LearnsAGaussianShift) {
  const FeatureMatrix train = RandomMatrix(400, 2, 1, 3, 71);
  const FeatureMatrix test = RandomMatrix(400, 2, 1, 3, 72);
  EXPECT_GT(MccOn(Train(Algorithm::kNB, train, {}, 1), test), 0.8);
}

TEST(LogisticRegression, ScoreRisesWithTheInformativeFeature) {
  const FeatureMatrix m = FlipLabels(RandomMatrix(400, 3, 1, 2, 81), 0.05, 82);
  const TrainedModel model = Train(Algorithm::kLR, m, {}, 1);
  double last = -1;
  for (double v = -3; v <= 5; v += 0.5) {
    const double s = model.Predict(std::vector<double>{v, 0, 0}).score;
    EXPECT_GT(s, last);
    last = s;
  }
  EXPECT_GT(MccOn(model, RandomMatrix(400, 3, 1, 2, 83)), 0.6);
}

TEST(Models, JsonRoundTripPreservesPredictions) {
  const FeatureMatrix m = FlipLabels(RandomMatrix(150, 4, 2, 1.0, 91), 0.1, 92);
  const FeatureMatrix probe = RandomMatrix(50, 4, 2, 1.0, 93);
  TrainParams p;
  p.trees = 10;
  p.rounds = 10;
  p.prune.strategy = PruneStrategy::kReducedError;
  for (const Algorithm a : AllAlgorithms()) {
    const TrainedModel model = Train(a, m, p, 17);
    const std::string json = model.ToJson();
    const TrainedModel back = TrainedModel::FromJson(json);
    EXPECT_EQ(back.ToJson(), json) << AlgorithmName(a);
    EXPECT_EQ(back.params(), p);
    EXPECT_EQ(back.features(), m.names());
    const auto x = model.PredictAll(probe);
    const auto y = back.PredictAll(probe);
    for (std::size_t r = 0; r < probe.rows(); ++r) {
      EXPECT_EQ(x[r].label, y[r].label);
      EXPECT_DOUBLE_EQ(x[r].score, y[r].score);
    }
  }
  EXPECT_THROW(TrainedModel::FromJson("{\"format\": 1}"), std::exception);
}

TEST(Models, SameSeedSameModel) {
  const FeatureMatrix m = FlipLabels(RandomMatrix(150, 4, 2, 1.0, 95), 0.1, 96);
  TrainParams p;
  p.trees = 10;
  for (const Algorithm a : AllAlgorithms()) {
    EXPECT_EQ(Train(a, m, p, 8), Train(a, m, p, 8)) << AlgorithmName(a);
  }
  EXPECT_FALSE(Train(Algorithm::kRF, m, p, 8) == Train(Algorithm::kRF, m, p, 9));
}

TEST(Models, PredictAllChecksColumnNames) {
  const FeatureMatrix m = RandomMatrix(40, 2, 1, 3, 97);
  const TrainedModel model = Train(Algorithm::kDT, m, {}, 1);
  FeatureMatrix renamed = m;
  renamed.specs[0].name = "other";
  EXPECT_THROW(model.PredictAll(renamed), std::invalid_argument);
}

}  // namespace
}  // namespace fakescope::learn
