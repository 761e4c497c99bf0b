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

// Corpus data model: accounts, timelines and the follower graph, plus file
// ingestion, serialization and validation.
//
// A Dataset is immutable once constructed. Accounts are kept sorted by id
// and each account's timeline is sorted newest first, so every derived
// artifact (feature rows, folds) has a canonical order.

#ifndef FAKESCOPE_CORPUS_H_
#define FAKESCOPE_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "fakescope/common.h"

namespace fakescope::corpus {

struct Account {
  UserId id = 0;
  std::string screen_name;
  std::string name;
  Timestamp created_at = 0;
  std::int64_t followers_count = 0;
  std::int64_t friends_count = 0;
  std::int64_t statuses_count = 0;
  std::int64_t listed_count = 0;
  std::int64_t favourites_count = 0;
  // Empty strings mean "not set".
  std::string url;
  std::string location;
  std::string description;
  bool default_profile_image = false;
  std::string profile_image_hash;
  Label label = Label::kUnlabeled;

  bool operator==(const Account&) const = default;
};

struct Tweet {
  TweetId id = 0;
  UserId user_id = 0;
  Timestamp created_at = 0;
  std::string text;
  std::string source;
  bool is_retweet = false;
  std::int64_t retweet_count = 0;
  // Times the tweet was favorited by other users (optional column).
  std::int64_t favorite_count = 0;
  bool geo = false;
  std::int64_t num_hashtags = 0;
  std::int64_t num_mentions = 0;
  std::int64_t num_urls = 0;

  bool operator==(const Tweet&) const = default;
};

struct NeighborSummary {
  std::int64_t followers_count = 0;
  std::int64_t statuses_count = 0;

  bool operator==(const NeighborSummary&) const = default;
};

// follower -> followed; "followed" is a friend of "follower".
struct Edge {
  UserId follower = 0;
  UserId followed = 0;

  auto operator<=>(const Edge&) const = default;
};

struct EntityCounts {
  std::int64_t hashtags = 0;
  std::int64_t mentions = 0;
  std::int64_t urls = 0;
};

// Pattern scan for #\w+, @\w+ and http:// / https:// prefixes.
EntityCounts CountEntities(std::string_view text);

enum class SourceKind { kWeb, kIphone, kAndroid, kFoursquare, kInstagram, kOther };

// Lower-cases, trims and strips an HTML anchor wrapper
// ("<a href=...>Twitter for iPhone</a>" -> "twitter for iphone").
std::string NormalizeSource(std::string_view source);
SourceKind ClassifySource(std::string_view source);
// Every source except the website ("web", "twitter.com") is an API client.
bool IsApiSource(std::string_view source);

class RelationshipGraph {
 public:
  RelationshipGraph() = default;
  RelationshipGraph(std::vector<Edge> edges,
                    std::map<UserId, NeighborSummary> neighbors);

  // Sorted; duplicates and self-loops are kept so validation can see them.
  const std::vector<Edge>& edges() const { return edges_; }
  const std::map<UserId, NeighborSummary>& neighbors() const {
    return neighbors_;
  }
  // Distinct, sorted, self-loops excluded.
  std::span<const UserId> friends(UserId id) const;
  std::span<const UserId> followers(UserId id) const;
  const NeighborSummary* neighbor(UserId id) const;

 private:
  std::vector<Edge> edges_;
  std::map<UserId, NeighborSummary> neighbors_;
  std::unordered_map<UserId, std::vector<UserId>> friends_;
  std::unordered_map<UserId, std::vector<UserId>> followers_;
};

struct DatasetParts {
  std::vector<Account> accounts;
  std::vector<Tweet> tweets;
  std::vector<Edge> edges;
  std::map<UserId, NeighborSummary> neighbors;
  // Defaults to the newest timestamp in the corpus plus one day.
  std::optional<Timestamp> reference_time;
  std::string provenance;
  bool has_timelines = true;
  bool has_graph = true;
};

class Dataset {
 public:
  Dataset() = default;
  explicit Dataset(DatasetParts parts);

  std::size_t size() const { return accounts_.size(); }
  bool empty() const { return accounts_.empty(); }
  const std::vector<Account>& accounts() const { return accounts_; }
  const Account& account(std::size_t i) const { return accounts_[i]; }
  std::optional<std::size_t> find(UserId id) const;

  // Newest first.
  std::span<const Tweet> timeline(std::size_t i) const;
  std::size_t tweet_count() const { return tweets_.size(); }
  // Tweets whose owner is not an account of the dataset.
  const std::vector<Tweet>& orphan_tweets() const { return orphans_; }

  const RelationshipGraph& graph() const { return graph_; }
  Timestamp reference_time() const { return reference_time_; }
  const std::string& provenance() const { return provenance_; }
  bool has_timelines() const { return has_timelines_; }
  bool has_graph() const { return has_graph_; }

  std::vector<Label> labels() const;
  std::size_t CountLabel(Label label) const;

  // Accounts at `indices` with their timelines. Graph edges touching a kept
  // account are preserved; dropped accounts that remain edge endpoints are
  // demoted to neighbor summaries, so neighbor statistics are unchanged.
  Dataset Subset(std::span<const std::size_t> indices,
                 std::string provenance) const;

  // Same accounts, timelines and graph with relabeled accounts (used by the
  // label-permutation controls). labels.size() must equal size().
  Dataset WithLabels(std::span<const Label> labels) const;

  // Everything except the given data classes, for cost-class checks.
  Dataset WithoutTimelines() const;
  Dataset WithoutGraph() const;

 private:
  std::vector<Account> accounts_;
  std::vector<Tweet> tweets_;
  std::vector<std::size_t> timeline_begin_;  // size() + 1 offsets
  std::vector<Tweet> orphans_;
  RelationshipGraph graph_;
  Timestamp reference_time_ = 0;
  std::string provenance_;
  bool has_timelines_ = true;
  bool has_graph_ = true;
};

struct Violation {
  std::string code;     // e.g. "negative_count", "dangling_tweet"
  std::string message;  // human readable, names the offending ids

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport Validate(const Dataset& dataset);

enum class Format { kCsv, kJson };

std::string_view FormatName(Format format);
Format ParseFormat(std::string_view text);

struct CorpusPaths {
  std::filesystem::path users;
  std::optional<std::filesystem::path> tweets;
  std::optional<std::filesystem::path> edges;
  std::optional<std::filesystem::path> neighbors;
  // corpus.json: reference_time and provenance written by SaveDataset.
  std::optional<std::filesystem::path> meta;

  // users.csv / tweets.csv / ... (or *.jsonl); optional files that do not
  // exist are left unset.
  static CorpusPaths InDirectory(const std::filesystem::path& dir,
                                 Format format);
};

struct LoadOptions {
  // When set, referential integrity and every Validate() check must pass.
  bool validate = true;
  std::optional<Timestamp> reference_time;
};

// Throws DataError naming file, line and column for malformed rows,
// "no accounts" for an empty users file, and the offending ids for dangling
// references and duplicate user ids.
Dataset LoadDataset(const CorpusPaths& paths, Format format,
                    const LoadOptions& options = {});

// Writes users/tweets/edges/neighbors plus corpus.json into `dir`.
// Returns the written files in a fixed order.
std::vector<std::filesystem::path> SaveDataset(
    const Dataset& dataset, const std::filesystem::path& dir, Format format);

}  // namespace fakescope::corpus

#endif  // FAKESCOPE_CORPUS_H_
