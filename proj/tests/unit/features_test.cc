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

#include "fakescope/features.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "fakescope/random.h"
#include "fakescope/synth.h"
#include "json.hpp"
#include "test_util.h"

namespace fakescope::features {
namespace {

using testing::MakeAccount;
using testing::MakeDataset;
using testing::MakeTweet;

std::size_t IndexOf(const FeatureMatrix& m, const std::string& id) {
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (m.specs[c].id == id) return c;
  }
  ADD_FAILURE() << "no column " << id;
  return 0;
}

TEST(Catalog, Counts) {
  EXPECT_EQ(FullCatalog().size(), 49u);
  std::size_t aliases = 0;
  for (const auto& s : FullCatalog()) aliases += s.is_alias();
  EXPECT_EQ(aliases, 3u);
  EXPECT_EQ(Catalog().size(), 46u);
  EXPECT_EQ(Catalog(CostClass::kA).size(), 19u);
  EXPECT_EQ(Catalog(CostClass::kC).size(), 4u);
  EXPECT_EQ(Catalog(CostClass::kB).size(), 23u);
}

TEST(Catalog, IdsAndNamesAreUnique) {
  std::set<std::string> ids;
  std::set<std::string> names;
  for (const auto& s : FullCatalog()) {
    EXPECT_TRUE(ids.insert(s.id).second) << s.id;
    EXPECT_TRUE(names.insert(s.name).second) << s.name;
  }
}

TEST(Catalog, AliasesPointAtDistinctEntries) {
  for (const auto& s : FullCatalog()) {
    if (!s.is_alias()) continue;
    const FeatureSpec& target = FindFeature(s.alias_of);
    EXPECT_FALSE(target.is_alias());
    EXPECT_EQ(target.cost_class, s.cost_class) << s.id;
  }
}

TEST(Catalog, LookupAndNamedSets) {
  EXPECT_EQ(FindFeature("yang2").name, "bi-link ratio");
  EXPECT_EQ(FindFeature("number of followers").id, "cc5");
  EXPECT_THROW(FindFeature("nope"), std::invalid_argument);
  EXPECT_EQ(NamedFeatureSet("class-a"), Catalog(CostClass::kA));
  EXPECT_EQ(NamedFeatureSet("all"), Catalog());
  EXPECT_EQ(NamedFeatureSet("cc").size(), 22u);
  EXPECT_EQ(NamedFeatureSet("sb").size(), 8u);
  EXPECT_EQ(NamedFeatureSet("yang").size(), 9u);
  EXPECT_THROW(NamedFeatureSet("class-d"), std::invalid_argument);
  EXPECT_EQ(ParseCostClass("B"), CostClass::kB);
  EXPECT_THROW(ParseCostClass("x"), std::invalid_argument);
}

TEST(Extract, ProfileValues) {
  auto a = MakeAccount(1, Label::kHuman);
  a.friends_count = 40;
  a.followers_count = 4;
  a.statuses_count = 60;
  a.created_at = testing::kReferenceTime - 10 * kSecondsPerDay;
  const corpus::Dataset d = MakeDataset({a}).WithoutTimelines().WithoutGraph();
  const std::vector<FeatureSpec> specs = {FindFeature("str1"), FindFeature("str5"),
                                          FindFeature("yang1"), FindFeature("yang9"),
                                          FindFeature("cc7"), FindFeature("cc5")};
  const FeatureMatrix m = Extract(d, specs);
  ASSERT_EQ(m.rows(), 1u);
  EXPECT_DOUBLE_EQ(m.at(0, 0), 40);
  EXPECT_DOUBLE_EQ(m.at(0, 1), 40.0 / 16.0);
  EXPECT_DOUBLE_EQ(m.at(0, 2), 10);
  EXPECT_DOUBLE_EQ(m.at(0, 3), 4);
  EXPECT_DOUBLE_EQ(m.at(0, 4), 60);  // alias carries the tweet count
  EXPECT_DOUBLE_EQ(m.at(0, 5), 4);
}

TEST(Extract, TimelineRatios) {
  auto a = MakeAccount(1, Label::kFake);
  const corpus::Dataset d = MakeDataset(
      {a}, {MakeTweet(1, 1, "see http://x.co/a", "twitterfeed"),
            MakeTweet(2, 1, "plain words", "twitterfeed"),
            MakeTweet(3, 1, "more http://x.co/b", "web"),
            MakeTweet(4, 1, "again", "web")});
  const FeatureMatrix m =
      Extract(d, {FindFeature("str4"), FindFeature("yang6"), FindFeature("yang7")});
  EXPECT_DOUBLE_EQ(m.at(0, 0), 0.5);
  EXPECT_DOUBLE_EQ(m.at(0, 1), 0.5);
  EXPECT_DOUBLE_EQ(m.at(0, 2), 0.5);
}

TEST(Extract, MissingDataIsReported) {
  const corpus::Dataset d =
      MakeDataset({MakeAccount(1, Label::kHuman)}).WithoutTimelines().WithoutGraph();
  EXPECT_NO_THROW(Extract(d, Catalog(CostClass::kA)));
  try {
    Extract(d, {FindFeature("cc5"), FindFeature("str4")});
    FAIL() << "expected InsufficientDataError";
  } catch (const InsufficientDataError& e) {
    EXPECT_NE(std::string(e.what()).find("URL ratio"), std::string::npos);
  }
  EXPECT_THROW(Extract(d, {FindFeature("yang2")}), InsufficientDataError);
}

// Random graph over the accounts themselves, checked against edge scans.
TEST(Extract, GraphFeaturesMatchBruteForce) {
  Rng rng(11);
  std::vector<corpus::Account> accounts;
  for (UserId id = 1; id <= 25; ++id) {
    auto a = MakeAccount(id, id % 2 ? Label::kHuman : Label::kFake);
    a.followers_count = static_cast<std::int64_t>(rng.UniformInt(501));
    a.friends_count = static_cast<std::int64_t>(rng.UniformInt(501));
    a.statuses_count = static_cast<std::int64_t>(rng.UniformInt(901));
    accounts.push_back(a);
  }
  std::vector<corpus::Edge> edges;
  for (UserId u = 1; u <= 25; ++u) {
    for (UserId v = 1; v <= 25; ++v) {
      if (u != v && rng.Bernoulli(0.2)) edges.push_back({u, v});
    }
  }
  const corpus::Dataset d = MakeDataset(accounts, {}, edges);
  const FeatureMatrix m = Extract(d, NamedFeatureSet("class-c"));
  for (std::size_t i = 0; i < d.size(); ++i) {
    const UserId id = d.account(i).id;
    std::vector<UserId> friends;
    std::vector<UserId> followers;
    for (const auto& e : edges) {
      if (e.follower == id) friends.push_back(e.followed);
      if (e.followed == id) followers.push_back(e.follower);
    }
    std::size_t mutual = 0;
    for (const UserId f : friends) {
      mutual += std::count(followers.begin(), followers.end(), f) > 0;
    }
    const double bilink = friends.empty() ? 0.0 : double(mutual) / double(friends.size());
    EXPECT_NEAR(m.at(i, IndexOf(m, "yang2")), bilink, 1e-12);
    EXPECT_NEAR(BiLinkRatio(d, i), bilink, 1e-12);

    std::vector<double> ff;
    for (const UserId f : friends) ff.push_back(double(d.account(*d.find(f)).followers_count));
    double tweets = 0;
    for (const UserId f : followers) tweets += double(d.account(*d.find(f)).statuses_count);
    const double avg_ff =
        ff.empty() ? 0.0 : std::accumulate(ff.begin(), ff.end(), 0.0) / double(ff.size());
    EXPECT_NEAR(m.at(i, IndexOf(m, "yang3")), avg_ff, 1e-9);
    EXPECT_NEAR(m.at(i, IndexOf(m, "yang4")),
                followers.empty() ? 0.0 : tweets / double(followers.size()), 1e-9);
    if (!ff.empty()) {
      std::sort(ff.begin(), ff.end());
      const std::size_t k = ff.size();
      const double median = k % 2 ? ff[k / 2] : (ff[k / 2 - 1] + ff[k / 2]) / 2;
      if (median > 0) {
        EXPECT_NEAR(m.at(i, IndexOf(m, "yang5")),
                    double(d.account(i).friends_count) / median, 1e-9);
      }
    }
  }
}

TEST(Extract, NeighborSummariesFillOutsideAccounts) {
  auto a = MakeAccount(1, Label::kHuman);
  a.friends_count = 30;
  const corpus::Dataset d = MakeDataset(
      {a}, {}, {{1, 100}, {1, 101}, {102, 1}},
      {{100, {10, 1}}, {101, {30, 2}}, {102, {5, 70}}});
  const NeighborStats s = ComputeNeighborStats(d, 0);
  EXPECT_DOUBLE_EQ(s.avg_neighbors_followers, 20);
  EXPECT_DOUBLE_EQ(s.avg_neighbors_tweets, 70);
  EXPECT_DOUBLE_EQ(s.friends_to_median_neighbors_followers, 30.0 / 20.0);
}

TEST(Extract, JobsDoNotChangeValues) {
  corpus::SynthConfig c = corpus::SynthConfig::PaperLike(5);
  c.n_humans = 50;
  c.n_fakes = 50;
  const corpus::Dataset d = corpus::Synthesize(c);
  ExtractOptions one;
  ExtractOptions four;
  four.jobs = 4;
  const FeatureMatrix a = Extract(d, Catalog(), one);
  const FeatureMatrix b = Extract(d, Catalog(), four);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.ids, b.ids);
  for (const double v : a.values) EXPECT_TRUE(std::isfinite(v));
}

TEST(Matrix, ColumnOperations) {
  const FeatureMatrix m = testing::MatrixFromRows({{1, 2, 3}, {4, 5, 6}},
                                                  {Label::kHuman, Label::kFake});
  EXPECT_EQ(m.column(1), (std::vector<double>{2, 5}));
  const FeatureMatrix w = m.WithoutColumn(1);
  EXPECT_EQ(w.names(), (std::vector<std::string>{"x0", "x2"}));
  EXPECT_EQ(w.values, (std::vector<double>{1, 3, 4, 6}));
  const std::vector<std::size_t> rows = {1};
  const FeatureMatrix r = m.SelectRows(rows);
  EXPECT_EQ(r.values, (std::vector<double>{4, 5, 6}));
  EXPECT_EQ(r.labels, (std::vector<Label>{Label::kFake}));
}

TEST(Writers, CsvAndJsonl) {
  FeatureMatrix m = testing::MatrixFromRows({{1, 0.5}, {2, 0.25}},
                                            {Label::kHuman, Label::kFake});
  std::ostringstream csv;
  WriteMatrixCsv(csv, m);
  EXPECT_EQ(csv.str(), "x0,x1,label\n1,0.5,human\n2,0.25,fake\n");
  std::ostringstream jsonl;
  WriteMatrixJsonl(jsonl, m);
  std::istringstream in(jsonl.str());
  std::string line;
  std::vector<nlohmann::json> records;
  while (std::getline(in, line)) records.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0]["type"], "metadata");
  EXPECT_EQ(records[0]["rows"], 2);
  EXPECT_EQ(records[2]["label"], "fake");
  EXPECT_DOUBLE_EQ(records[2]["values"][1].get<double>(), 0.25);
}

}  // namespace
}  // namespace fakescope::features
