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

#include <algorithm>
#include <cctype>
#include <set>

#include "fakescope/corpus.h"

namespace fakescope::corpus {
namespace {

bool IsWordByte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || u >= 0x80;
}

bool StartsWith(std::string_view text, std::size_t pos, std::string_view prefix) {
  return text.size() >= pos + prefix.size() &&
         text.compare(pos, prefix.size(), prefix) == 0;
}

}  // namespace

EntityCounts CountEntities(std::string_view text) {
  EntityCounts counts;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const bool boundary = i == 0 || !IsWordByte(text[i - 1]);
    if ((c == '#' || c == '@') && i + 1 < text.size() &&
        IsWordByte(text[i + 1]) && boundary) {
      (c == '#' ? counts.hashtags : counts.mentions) += 1;
      while (i + 1 < text.size() && IsWordByte(text[i + 1])) ++i;
    } else if ((c == 'h' || c == 'H') && boundary &&
               (StartsWith(text, i, "http://") ||
                StartsWith(text, i, "https://"))) {
      counts.urls += 1;
      while (i + 1 < text.size() &&
             !std::isspace(static_cast<unsigned char>(text[i + 1]))) {
        ++i;
      }
    }
  }
  return counts;
}

std::string NormalizeSource(std::string_view source) {
  std::string s = Trim(source);
  if (!s.empty() && s.front() == '<') {
    const auto open_end = s.find('>');
    const auto close = s.rfind('<');
    if (open_end != std::string::npos && close != std::string::npos &&
        close > open_end) {
      s = s.substr(open_end + 1, close - open_end - 1);
    }
  }
  return ToLower(Trim(s));
}

SourceKind ClassifySource(std::string_view source) {
  const std::string s = NormalizeSource(source);
  if (s == "web" || s == "twitter.com") return SourceKind::kWeb;
  if (s.find("iphone") != std::string::npos) return SourceKind::kIphone;
  if (s.find("android") != std::string::npos) return SourceKind::kAndroid;
  if (s.find("foursquare") != std::string::npos) return SourceKind::kFoursquare;
  if (s.find("instagram") != std::string::npos) return SourceKind::kInstagram;
  return SourceKind::kOther;
}

bool IsApiSource(std::string_view source) {
  return ClassifySource(source) != SourceKind::kWeb;
}

RelationshipGraph::RelationshipGraph(
    std::vector<Edge> edges, std::map<UserId, NeighborSummary> neighbors)
    : edges_(std::move(edges)), neighbors_(std::move(neighbors)) {
  std::sort(edges_.begin(), edges_.end());
  for (const Edge& e : edges_) {
    if (e.follower == e.followed) continue;
    friends_[e.follower].push_back(e.followed);
    followers_[e.followed].push_back(e.follower);
  }
  for (auto* index : {&friends_, &followers_}) {
    for (auto& [id, list] : *index) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }
}

std::span<const UserId> RelationshipGraph::friends(UserId id) const {
  auto it = friends_.find(id);
  if (it == friends_.end()) return {};
  return it->second;
}

std::span<const UserId> RelationshipGraph::followers(UserId id) const {
  auto it = followers_.find(id);
  if (it == followers_.end()) return {};
  return it->second;
}

const NeighborSummary* RelationshipGraph::neighbor(UserId id) const {
  auto it = neighbors_.find(id);
  return it == neighbors_.end() ? nullptr : &it->second;
}

Dataset::Dataset(DatasetParts parts)
    : accounts_(std::move(parts.accounts)),
      provenance_(std::move(parts.provenance)),
      has_timelines_(parts.has_timelines),
      has_graph_(parts.has_graph) {
  std::stable_sort(accounts_.begin(), accounts_.end(),
                   [](const Account& a, const Account& b) { return a.id < b.id; });

  Timestamp newest = 0;
  bool any = false;
  for (const Account& a : accounts_) {
    newest = any ? std::max(newest, a.created_at) : a.created_at;
    any = true;
  }
  for (const Tweet& t : parts.tweets) {
    newest = any ? std::max(newest, t.created_at) : t.created_at;
    any = true;
  }
  reference_time_ = parts.reference_time.value_or(newest + kSecondsPerDay);

  std::vector<std::vector<Tweet>> grouped(accounts_.size());
  for (Tweet& t : parts.tweets) {
    if (auto idx = find(t.user_id)) {
      grouped[*idx].push_back(std::move(t));
    } else {
      orphans_.push_back(std::move(t));
    }
  }
  timeline_begin_.reserve(accounts_.size() + 1);
  for (auto& group : grouped) {
    std::sort(group.begin(), group.end(), [](const Tweet& a, const Tweet& b) {
      if (a.created_at != b.created_at) return a.created_at > b.created_at;
      return a.id > b.id;
    });
    timeline_begin_.push_back(tweets_.size());
    for (Tweet& t : group) tweets_.push_back(std::move(t));
  }
  timeline_begin_.push_back(tweets_.size());
  graph_ = RelationshipGraph(std::move(parts.edges), std::move(parts.neighbors));
}

std::optional<std::size_t> Dataset::find(UserId id) const {
  auto it = std::lower_bound(
      accounts_.begin(), accounts_.end(), id,
      [](const Account& a, UserId v) { return a.id < v; });
  if (it == accounts_.end() || it->id != id) return std::nullopt;
  return static_cast<std::size_t>(it - accounts_.begin());
}

std::span<const Tweet> Dataset::timeline(std::size_t i) const {
  return std::span<const Tweet>(tweets_).subspan(
      timeline_begin_[i], timeline_begin_[i + 1] - timeline_begin_[i]);
}

std::vector<Label> Dataset::labels() const {
  std::vector<Label> out;
  out.reserve(accounts_.size());
  for (const Account& a : accounts_) out.push_back(a.label);
  return out;
}

std::size_t Dataset::CountLabel(Label label) const {
  return static_cast<std::size_t>(std::count_if(
      accounts_.begin(), accounts_.end(),
      [label](const Account& a) { return a.label == label; }));
}

Dataset Dataset::Subset(std::span<const std::size_t> indices,
                        std::string provenance) const {
  DatasetParts parts;
  parts.reference_time = reference_time_;
  parts.provenance = std::move(provenance);
  parts.has_timelines = has_timelines_;
  parts.has_graph = has_graph_;
  std::set<UserId> kept;
  for (const std::size_t i : indices) {
    parts.accounts.push_back(accounts_.at(i));
    kept.insert(accounts_[i].id);
    for (const Tweet& t : timeline(i)) parts.tweets.push_back(t);
  }
  for (const Edge& e : graph_.edges()) {
    if (!kept.count(e.follower) && !kept.count(e.followed)) continue;
    parts.edges.push_back(e);
    for (const UserId end : {e.follower, e.followed}) {
      if (kept.count(end) || parts.neighbors.count(end)) continue;
      if (const NeighborSummary* n = graph_.neighbor(end)) {
        parts.neighbors.emplace(end, *n);
      } else if (auto idx = find(end)) {
        parts.neighbors.emplace(
            end, NeighborSummary{accounts_[*idx].followers_count,
                                 accounts_[*idx].statuses_count});
      }
    }
  }
  return Dataset(std::move(parts));
}

Dataset Dataset::WithLabels(std::span<const Label> labels) const {
  if (labels.size() != accounts_.size()) {
    throw std::invalid_argument("WithLabels: label count mismatch");
  }
  Dataset copy = *this;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    copy.accounts_[i].label = labels[i];
  }
  return copy;
}

Dataset Dataset::WithoutTimelines() const {
  Dataset copy = *this;
  copy.tweets_.clear();
  copy.orphans_.clear();
  std::fill(copy.timeline_begin_.begin(), copy.timeline_begin_.end(), 0);
  copy.has_timelines_ = false;
  return copy;
}

Dataset Dataset::WithoutGraph() const {
  Dataset copy = *this;
  copy.graph_ = RelationshipGraph();
  copy.has_graph_ = false;
  return copy;
}

ValidationReport Validate(const Dataset& dataset) {
  ValidationReport report;
  auto add = [&](std::string code, std::string message) {
    report.violations.push_back({std::move(code), std::move(message)});
  };
  const Timestamp ref = dataset.reference_time();
  const auto& accounts = dataset.accounts();

  for (std::size_t i = 1; i < accounts.size(); ++i) {
    if (accounts[i].id == accounts[i - 1].id &&
        (i == 1 || accounts[i - 2].id != accounts[i].id)) {
      add("duplicate_user_id",
          "duplicate user_id " + std::to_string(accounts[i].id));
    }
  }
  for (const Account& a : accounts) {
    const std::pair<const char*, std::int64_t> counts[] = {
        {"followers_count", a.followers_count},
        {"friends_count", a.friends_count},
        {"statuses_count", a.statuses_count},
        {"listed_count", a.listed_count},
        {"favourites_count", a.favourites_count}};
    for (const auto& [field, value] : counts) {
      if (value < 0) {
        add("negative_count", "account " + std::to_string(a.id) + ": " +
                                  field + " = " + std::to_string(value));
      }
    }
    if (a.created_at > ref) {
      add("future_timestamp", "account " + std::to_string(a.id) +
                                  " created after reference time " +
                                  FormatTimestamp(ref));
    }
  }

  std::set<TweetId> tweet_ids;
  auto check_tweet = [&](const Tweet& t) {
    if (!tweet_ids.insert(t.id).second) {
      add("duplicate_tweet_id", "duplicate tweet_id " + std::to_string(t.id));
    }
    const std::pair<const char*, std::int64_t> counts[] = {
        {"retweet_count", t.retweet_count},
        {"favorite_count", t.favorite_count},
        {"num_hashtags", t.num_hashtags},
        {"num_mentions", t.num_mentions},
        {"num_urls", t.num_urls}};
    for (const auto& [field, value] : counts) {
      if (value < 0) {
        add("negative_count", "tweet " + std::to_string(t.id) + ": " + field +
                                  " = " + std::to_string(value));
      }
    }
    if (t.created_at > ref) {
      add("future_timestamp", "tweet " + std::to_string(t.id) +
                                  " dated after reference time " +
                                  FormatTimestamp(ref));
    }
  };
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    for (const Tweet& t : dataset.timeline(i)) check_tweet(t);
  }
  for (const Tweet& t : dataset.orphan_tweets()) {
    check_tweet(t);
    add("dangling_tweet", "tweet " + std::to_string(t.id) +
                              " references unknown user_id " +
                              std::to_string(t.user_id));
  }

  const auto& graph = dataset.graph();
  const auto& edges = graph.edges();
  std::set<UserId> reported_unknown;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    const std::string label =
        std::to_string(e.follower) + " -> " + std::to_string(e.followed);
    if (e.follower == e.followed) add("self_loop", "self-loop edge " + label);
    if (i > 0 && edges[i - 1] == e &&
        (i == 1 || edges[i - 2] != e)) {
      add("duplicate_edge", "duplicate edge " + label);
    }
    for (const UserId end : {e.follower, e.followed}) {
      if (dataset.find(end) || graph.neighbor(end)) continue;
      if (reported_unknown.insert(end).second) {
        add("dangling_edge", "edge endpoint " + std::to_string(end) +
                                 " is neither an account nor a neighbor "
                                 "summary");
      }
    }
  }
  for (const auto& [id, n] : graph.neighbors()) {
    if (n.followers_count < 0 || n.statuses_count < 0) {
      add("negative_count",
          "neighbor " + std::to_string(id) + " has a negative count");
    }
  }
  return report;
}

std::string_view FormatName(Format format) {
  return format == Format::kCsv ? "csv" : "json";
}

Format ParseFormat(std::string_view text) {
  const std::string lower = ToLower(text);
  if (lower == "csv") return Format::kCsv;
  if (lower == "json" || lower == "jsonl") return Format::kJson;
  throw std::invalid_argument("unknown format '" + std::string(text) +
                              "' (expected csv or json)");
}

}  // namespace fakescope::corpus
