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

#include "fakescope/rules.h"

#include <gtest/gtest.h>

#include "cc_fixtures.h"
#include "fakescope/metrics.h"
#include "fakescope/synth.h"
#include "test_util.h"

namespace fakescope::rules {
namespace {

using testing::MakeAccount;
using testing::MakeDataset;
using testing::MakeTweet;

CcScore ClassifyId(const corpus::Dataset& d, UserId id) {
  const DatasetAggregates agg(d);
  const RuleConfig config;
  return CcClassify({d, *d.find(id), agg, config});
}

bool Satisfied(const corpus::Dataset& d, UserId id, RuleId rule) {
  const DatasetAggregates agg(d);
  const RuleConfig config;
  return EvaluateRule(rule, {d, *d.find(id), agg, config}).satisfied;
}

std::vector<RuleOutcome> AllCc(bool satisfied) {
  std::vector<RuleOutcome> out;
  for (int i = 1; i <= 22; ++i) out.push_back({{RuleSet::kCC, i}, satisfied, std::nullopt});
  return out;
}

TEST(Catalog, RuleCountsAndNames) {
  EXPECT_EQ(RulesOf(RuleSet::kCC).size(), 22u);
  EXPECT_EQ(RulesOf(RuleSet::kSOS).size(), 5u);
  EXPECT_EQ(RulesOf(RuleSet::kSB).size(), 8u);
  EXPECT_EQ(AllRules().size(), 35u);
  EXPECT_EQ((RuleId{RuleSet::kSB, 8}).Name(), "SB8");
  EXPECT_THROW(GetRule({RuleSet::kSOS, 6}), std::invalid_argument);
  EXPECT_EQ(ParseRuleSet("SOS"), RuleSet::kSOS);
  EXPECT_THROW(ParseRuleSet("xyz"), std::invalid_argument);
}

TEST(Verdict, BandsAreInclusive) {
  EXPECT_EQ(VerdictForScore(1), Verdict::kHuman);
  EXPECT_EQ(VerdictForScore(0), Verdict::kNeutral);
  EXPECT_EQ(VerdictForScore(-4), Verdict::kNeutral);
  EXPECT_EQ(VerdictForScore(-5), Verdict::kBot);
}

TEST(ScoreCc, ExtremeOutcomeVectors) {
  const CcScore best = ScoreCc(AllCc(true), false);
  EXPECT_EQ(best.human_points, 25);
  EXPECT_EQ(best.score, 25);
  const CcScore worst = ScoreCc(AllCc(false), true);
  EXPECT_EQ(worst.score, -19);
  EXPECT_EQ(worst.verdict, Verdict::kBot);
}

TEST(ScoreCc, NeedsEachRuleOnce) {
  auto outcomes = AllCc(true);
  outcomes.pop_back();
  EXPECT_THROW(ScoreCc(outcomes, false), std::invalid_argument);
  outcomes.push_back(outcomes.front());
  EXPECT_THROW(ScoreCc(outcomes, false), std::invalid_argument);
}

TEST(CcClassify, HandTracedAccounts) {
  const corpus::Dataset d = fixtures::CcFixtureDataset();
  const CcScore a = ClassifyId(d, fixtures::kAllSatisfied);
  EXPECT_EQ(a.score, 25);
  EXPECT_EQ(a.verdict, Verdict::kHuman);
  const CcScore b = ClassifyId(d, fixtures::kAllFailedApi);
  EXPECT_EQ(b.score, -19);
  EXPECT_EQ(b.verdict, Verdict::kBot);
  const CcScore c = ClassifyId(d, fixtures::kZeroScore);
  EXPECT_EQ(c.human_points, 9);
  EXPECT_EQ(c.bot_points, 9);
  EXPECT_EQ(c.score, 0);
  EXPECT_EQ(c.verdict, Verdict::kNeutral);
}

TEST(CcClassify, EveryRuleOfTheAllSatisfiedAccountHolds) {
  const corpus::Dataset d = fixtures::CcFixtureDataset();
  for (int i = 1; i <= 22; ++i) {
    EXPECT_TRUE(Satisfied(d, fixtures::kAllSatisfied, {RuleSet::kCC, i})) << "CC" << i;
    EXPECT_FALSE(Satisfied(d, fixtures::kAllFailedApi, {RuleSet::kCC, i})) << "CC" << i;
  }
}

TEST(Rules, TimelineRulesNeedTimelines) {
  const corpus::Dataset d = fixtures::CcFixtureDataset().WithoutTimelines();
  EXPECT_THROW(Satisfied(d, 1, {RuleSet::kCC, 12}), InsufficientDataError);
  EXPECT_NO_THROW(Satisfied(d, 1, {RuleSet::kCC, 5}));
  EXPECT_THROW(ClassifyId(d, 1), InsufficientDataError);
}

TEST(Rules, FollowerThresholdIsInclusive) {
  auto a = MakeAccount(1, Label::kHuman);
  a.followers_count = 30;
  auto b = MakeAccount(2, Label::kFake);
  b.followers_count = 29;
  const corpus::Dataset d = MakeDataset({a, b});
  EXPECT_TRUE(Satisfied(d, 1, {RuleSet::kCC, 5}));
  EXPECT_FALSE(Satisfied(d, 2, {RuleSet::kCC, 5}));
}

TEST(Rules, SocialbakersChecks) {
  auto ratio = MakeAccount(1, Label::kFake);
  ratio.friends_count = 500;
  ratio.followers_count = 10;  // 50:1
  ratio.description = "x";
  ratio.location = "y";
  auto lonely = MakeAccount(2, Label::kFake);
  lonely.friends_count = 101;
  lonely.followers_count = 100;
  lonely.statuses_count = 3;
  auto old_default = MakeAccount(3, Label::kFake);
  old_default.default_profile_image = true;
  old_default.created_at = testing::kReferenceTime - 61 * kSecondsPerDay;
  old_default.statuses_count = 1;
  auto young_default = MakeAccount(4, Label::kFake);
  young_default.default_profile_image = true;
  young_default.created_at = testing::kReferenceTime - 59 * kSecondsPerDay;
  young_default.statuses_count = 1;
  std::vector<corpus::Tweet> tweets;
  for (int i = 0; i < 4; ++i) tweets.push_back(MakeTweet(10 + i, 2, "same text", "web"));
  tweets.push_back(MakeTweet(20, 3, "make money fast", "web"));
  const corpus::Dataset d = MakeDataset({ratio, lonely, old_default, young_default}, tweets);
  EXPECT_TRUE(Satisfied(d, 1, {RuleSet::kSB, 1}));
  EXPECT_FALSE(Satisfied(d, 2, {RuleSet::kSB, 1}));
  EXPECT_TRUE(Satisfied(d, 1, {RuleSet::kSB, 6}));   // never tweeted
  EXPECT_FALSE(Satisfied(d, 2, {RuleSet::kSB, 6}));
  EXPECT_TRUE(Satisfied(d, 2, {RuleSet::kSB, 3}));   // 4 repetitions
  EXPECT_TRUE(Satisfied(d, 3, {RuleSet::kSB, 2}));   // spam phrase
  EXPECT_TRUE(Satisfied(d, 3, {RuleSet::kSB, 7}));
  EXPECT_FALSE(Satisfied(d, 4, {RuleSet::kSB, 7}));
  EXPECT_TRUE(Satisfied(d, 2, {RuleSet::kSB, 8}));   // no bio/location, 101 friends
  EXPECT_FALSE(Satisfied(d, 1, {RuleSet::kSB, 8}));
}

TEST(Rules, StateofsearchChecks) {
  std::vector<corpus::Account> accounts;
  for (UserId id = 1; id <= 4; ++id) {
    auto a = MakeAccount(id, Label::kFake);
    a.profile_image_hash = id <= 3 ? "shared" : "unique";
    accounts.push_back(a);
  }
  accounts[0].description = "I am a bot.";
  accounts[1].friends_count = 1000;
  accounts[1].followers_count = 10;
  const corpus::Dataset d = MakeDataset(accounts, {MakeTweet(1, 4, "hi", "twitterfeed")});
  EXPECT_TRUE(Satisfied(d, 1, {RuleSet::kSOS, 1}));
  EXPECT_FALSE(Satisfied(d, 2, {RuleSet::kSOS, 1}));
  EXPECT_TRUE(Satisfied(d, 2, {RuleSet::kSOS, 2}));
  EXPECT_TRUE(Satisfied(d, 3, {RuleSet::kSOS, 4}));  // three accounts share it
  EXPECT_FALSE(Satisfied(d, 4, {RuleSet::kSOS, 4}));
  EXPECT_TRUE(Satisfied(d, 4, {RuleSet::kSOS, 5}));
  EXPECT_FALSE(Satisfied(d, 1, {RuleSet::kSOS, 5}));
}

TEST(RunRuleset, JobsDoNotChangeVerdicts) {
  corpus::SynthConfig c = corpus::SynthConfig::PaperLike(4);
  c.n_humans = 60;
  c.n_fakes = 60;
  const corpus::Dataset d = corpus::Synthesize(c);
  const VerdictTable one = RunRuleset(RuleSet::kCC, d, {}, 1);
  const VerdictTable four = RunRuleset(RuleSet::kCC, d, {}, 4);
  ASSERT_EQ(one.cc.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) EXPECT_EQ(one.cc[i].score, four.cc[i].score);
}

TEST(RuleReport, MetricsMatchDirectComputation) {
  corpus::SynthConfig c = corpus::SynthConfig::PaperLike(6);
  c.n_humans = 80;
  c.n_fakes = 70;
  const corpus::Dataset d = corpus::Synthesize(c);
  const auto rows = RuleReport(d, {}, 1, RuleSet::kCC);
  ASSERT_EQ(rows.size(), 22u);
  const RuleReportRow& r5 = rows[4];
  ASSERT_EQ(r5.rule.id.Name(), "CC5");
  // A failed human rule predicts fake.
  metrics::ConfusionMatrix cm;
  for (const corpus::Account& a : d.accounts()) {
    cm.Add(a.label, a.followers_count >= 30 ? Label::kHuman : Label::kFake);
  }
  EXPECT_NEAR(r5.metrics.mcc, metrics::Mcc(cm), 1e-12);
  EXPECT_NEAR(r5.metrics.accuracy, metrics::Summarize(cm).accuracy, 1e-12);
}

TEST(RuleReport, NeedsLabeledAccountsOfBothClasses) {
  const corpus::Dataset one_class =
      MakeDataset({MakeAccount(1, Label::kFake), MakeAccount(2, Label::kFake)});
  EXPECT_THROW(RuleReport(one_class.WithoutTimelines().WithoutGraph()), DataError);
  const corpus::Dataset unlabeled =
      MakeDataset({MakeAccount(1, Label::kFake), MakeAccount(2, Label::kUnlabeled)});
  EXPECT_THROW(RuleReport(unlabeled), DataError);
}

}  // namespace
}  // namespace fakescope::rules
