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

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "fakescope/csv.h"
#include "fakescope/parallel.h"
#include "fakescope/signals.h"
#include "json.hpp"

namespace fakescope::features {
namespace {

using signals::SafeRatio;

std::vector<FeatureSpec> BuildCatalog() {
  using C = CostClass;
  using S = SourceSet;
  using K = FeatureKind;
  const C A = C::kA, B = C::kB, Cc = C::kC;
  return {
      {"cc1", "profile has name", A, S::kCC, K::kBoolean, ""},
      {"cc2", "profile has image", A, S::kCC, K::kBoolean, ""},
      {"cc3", "has address", A, S::kCC, K::kBoolean, ""},
      {"cc4", "has biography", A, S::kCC, K::kBoolean, ""},
      {"cc5", "number of followers", A, S::kCC, K::kCount, ""},
      {"cc6", "belongs to a list", A, S::kCC, K::kCount, ""},
      {"cc7", "tweets >= 50", A, S::kCC, K::kCount, "str2"},
      {"cc8", "geo-localized", B, S::kCC, K::kCount, ""},
      {"cc9", "has URL in profile", A, S::kCC, K::kBoolean, ""},
      {"cc10", "is favorite", B, S::kCC, K::kCount, ""},
      {"cc11", "uses punctuation", B, S::kCC, K::kCount, ""},
      {"cc12", "uses hashtag", B, S::kCC, K::kCount, ""},
      {"cc13", "uses iPhone", B, S::kCC, K::kCount, ""},
      {"cc14", "uses Android", B, S::kCC, K::kCount, ""},
      {"cc15", "uses Foursquare", B, S::kCC, K::kCount, ""},
      {"cc16", "uses Instagram", B, S::kCC, K::kCount, ""},
      {"cc17", "uses Twitter.com", B, S::kCC, K::kCount, ""},
      {"cc18", "userID in tweet", B, S::kCC, K::kCount, ""},
      {"cc19", "2*followers >= friends", A, S::kCC, K::kBoolean, ""},
      {"cc20", "tweets not only URLs", B, S::kCC, K::kCount, ""},
      {"cc21", "retweet >= 1", B, S::kCC, K::kCount, ""},
      {"cc22", "uses different clients", B, S::kCC, K::kCount, ""},
      {"sos1", "bot in biography", A, S::kSOS, K::kBoolean, ""},
      {"sos2", "friends/followers ~ 100", A, S::kSOS, K::kRatio, ""},
      {"sos3", "same sentence to many accounts", B, S::kSOS, K::kBoolean, ""},
      {"sos4", "duplicate profile pictures", A, S::kSOS, K::kBoolean, ""},
      {"sos5", "tweet from API", B, S::kSOS, K::kCount, ""},
      {"sb1", "friends/followers >= 50", A, S::kSB, K::kRatio, ""},
      {"sb2", "tweets spam phrases", B, S::kSB, K::kRatio, ""},
      {"sb3", "same tweet > 3", B, S::kSB, K::kCount, ""},
      {"sb4", "retweets >= 90%", B, S::kSB, K::kRatio, ""},
      {"sb5", "tweet-links >= 90%", B, S::kSB, K::kRatio, "str4"},
      {"sb6", "0 tweets", A, S::kSB, K::kCount, "str2"},
      {"sb7", "default image after 2 months", A, S::kSB, K::kBoolean, ""},
      {"sb8", "no bio no location friends >= 100", A, S::kSB, K::kBoolean, ""},
      {"str1", "number of friends", A, S::kStringhini, K::kCount, ""},
      {"str2", "number of tweets", A, S::kStringhini, K::kCount, ""},
      {"str3", "tweet similarity", B, S::kStringhini, K::kBoolean, ""},
      {"str4", "URL ratio", B, S::kStringhini, K::kRatio, ""},
      {"str5", "friends/(followers^2) ratio", A, S::kStringhini, K::kRatio, ""},
      {"yang1", "age", A, S::kYang, K::kDuration, ""},
      {"yang2", "bi-link ratio", Cc, S::kYang, K::kRatio, ""},
      {"yang3", "average neighbors' followers", Cc, S::kYang, K::kRatio, ""},
      {"yang4", "average neighbors' tweets", Cc, S::kYang, K::kRatio, ""},
      {"yang5", "followings to median neighbor's followers", Cc, S::kYang,
       K::kRatio, ""},
      {"yang6", "API ratio", B, S::kYang, K::kRatio, ""},
      {"yang7", "API URL ratio", B, S::kYang, K::kRatio, ""},
      {"yang8", "API tweet similarity", B, S::kYang, K::kBoolean, ""},
      {"yang9", "following rate", A, S::kYang, K::kRatio, ""},
  };
}

std::optional<rules::RuleId> RuleFor(const std::string& id) {
  const std::pair<const char*, rules::RuleSet> prefixes[] = {
      {"sos", rules::RuleSet::kSOS},
      {"sb", rules::RuleSet::kSB},
      {"cc", rules::RuleSet::kCC}};
  for (const auto& [prefix, set] : prefixes) {
    const std::string p(prefix);
    if (id.rfind(p, 0) == 0) return rules::RuleId{set, std::stoi(id.substr(p.size()))};
  }
  return std::nullopt;
}

double NeighborFollowers(const corpus::Dataset& d, UserId id) {
  if (auto i = d.find(id)) return static_cast<double>(d.account(*i).followers_count);
  if (const auto* n = d.graph().neighbor(id)) {
    return static_cast<double>(n->followers_count);
  }
  throw DataError("no statistics for neighbor " + std::to_string(id));
}

double NeighborTweets(const corpus::Dataset& d, UserId id) {
  if (auto i = d.find(id)) return static_cast<double>(d.account(*i).statuses_count);
  if (const auto* n = d.graph().neighbor(id)) {
    return static_cast<double>(n->statuses_count);
  }
  throw DataError("no statistics for neighbor " + std::to_string(id));
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0;
  for (const double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Evaluation order for one account: the rule-derived columns first (one
// shared rule evaluator), then the direct formulas.
class RowBuilder {
 public:
  RowBuilder(const corpus::Dataset& dataset, const std::vector<FeatureSpec>& specs,
             const rules::DatasetAggregates& aggregates,
             const rules::RuleConfig& config)
      : dataset_(dataset), aggregates_(aggregates), config_(config) {
    for (const FeatureSpec& s : specs) {
      const std::string id = s.is_alias() ? s.alias_of : s.id;
      effective_.push_back(id);
      if (auto r = RuleFor(id)) {
        rule_slot_.push_back(static_cast<int>(rule_ids_.size()));
        rule_ids_.push_back(*r);
      } else {
        rule_slot_.push_back(-1);
      }
    }
  }

  void Build(std::size_t index, double* out) const {
    const rules::AccountContext ctx{dataset_, index, aggregates_, config_};
    std::vector<rules::RuleOutcome> outcomes;
    if (!rule_ids_.empty()) outcomes = rules::EvaluateRules(rule_ids_, ctx);
    const corpus::Account& a = dataset_.account(index);
    std::optional<signals::TimelineCounts> counts;
    auto timeline = [&] { return dataset_.timeline(index); };
    auto get_counts = [&]() -> const signals::TimelineCounts& {
      if (!counts) counts = signals::CountTimeline(timeline());
      return *counts;
    };
    std::optional<NeighborStats> neighbor;
    auto get_neighbor = [&]() -> const NeighborStats& {
      if (!neighbor) neighbor = ComputeNeighborStats(dataset_, index);
      return *neighbor;
    };
    const auto friends = static_cast<double>(a.friends_count);
    const auto followers = static_cast<double>(a.followers_count);
    for (std::size_t c = 0; c < effective_.size(); ++c) {
      if (rule_slot_[c] >= 0) {
        out[c] = outcomes[static_cast<std::size_t>(rule_slot_[c])].AttributeOrOutcome();
        continue;
      }
      const std::string& id = effective_[c];
      double v = 0;
      if (id == "str1") {
        v = friends;
      } else if (id == "str2") {
        v = static_cast<double>(a.statuses_count);
      } else if (id == "str3") {
        v = signals::MessageSimilarity(timeline()) ? 1.0 : 0.0;
      } else if (id == "str4") {
        v = SafeRatio(static_cast<double>(get_counts().with_url),
                      static_cast<double>(get_counts().tweets));
      } else if (id == "str5") {
        v = SafeRatio(friends, followers * followers);
      } else if (id == "yang1") {
        v = signals::AgeDays(a, dataset_.reference_time());
      } else if (id == "yang2") {
        v = BiLinkRatio(dataset_, index);
      } else if (id == "yang3") {
        v = get_neighbor().avg_neighbors_followers;
      } else if (id == "yang4") {
        v = get_neighbor().avg_neighbors_tweets;
      } else if (id == "yang5") {
        v = get_neighbor().friends_to_median_neighbors_followers;
      } else if (id == "yang6") {
        v = SafeRatio(static_cast<double>(get_counts().api),
                      static_cast<double>(get_counts().tweets));
      } else if (id == "yang7") {
        v = SafeRatio(static_cast<double>(get_counts().api_with_url),
                      static_cast<double>(get_counts().api));
      } else if (id == "yang8") {
        v = signals::ApiTweetSimilarity(timeline()) ? 1.0 : 0.0;
      } else if (id == "yang9") {
        v = SafeRatio(friends, signals::AgeDays(a, dataset_.reference_time()));
      } else {
        throw std::logic_error("unhandled feature " + id);
      }
      out[c] = v;
    }
  }

 private:
  const corpus::Dataset& dataset_;
  const rules::DatasetAggregates& aggregates_;
  const rules::RuleConfig& config_;
  std::vector<std::string> effective_;
  std::vector<int> rule_slot_;
  std::vector<rules::RuleId> rule_ids_;
};

}  // namespace

std::string_view CostClassName(CostClass c) {
  switch (c) {
    case CostClass::kA: return "A";
    case CostClass::kB: return "B";
    case CostClass::kC: return "C";
  }
  return "?";
}

CostClass ParseCostClass(std::string_view text) {
  const std::string s = ToLower(text);
  if (s == "a" || s == "class-a") return CostClass::kA;
  if (s == "b" || s == "class-b") return CostClass::kB;
  if (s == "c" || s == "class-c") return CostClass::kC;
  throw std::invalid_argument("unknown cost class '" + std::string(text) + "'");
}

std::string_view SourceSetName(SourceSet s) {
  switch (s) {
    case SourceSet::kCC: return "cc";
    case SourceSet::kSOS: return "sos";
    case SourceSet::kSB: return "sb";
    case SourceSet::kStringhini: return "stringhini";
    case SourceSet::kYang: return "yang";
  }
  return "?";
}

std::string_view FeatureKindName(FeatureKind k) {
  switch (k) {
    case FeatureKind::kBoolean: return "boolean";
    case FeatureKind::kCount: return "count";
    case FeatureKind::kRatio: return "ratio";
    case FeatureKind::kDuration: return "duration";
  }
  return "?";
}

const std::vector<FeatureSpec>& FullCatalog() {
  static const std::vector<FeatureSpec> catalog = BuildCatalog();
  return catalog;
}

std::vector<FeatureSpec> Catalog(std::optional<CostClass> filter) {
  std::vector<FeatureSpec> out;
  for (const FeatureSpec& s : FullCatalog()) {
    if (s.is_alias()) continue;
    if (filter && s.cost_class != *filter) continue;
    out.push_back(s);
  }
  return out;
}

const FeatureSpec& FindFeature(std::string_view id_or_name) {
  for (const FeatureSpec& s : FullCatalog()) {
    if (s.id == id_or_name || s.name == id_or_name) return s;
  }
  throw std::invalid_argument("unknown feature '" + std::string(id_or_name) + "'");
}

std::vector<FeatureSpec> NamedFeatureSet(std::string_view name) {
  const std::string s = ToLower(name);
  if (s == "all") return Catalog();
  if (s == "a" || s == "b" || s == "c" || s.rfind("class-", 0) == 0) {
    return Catalog(ParseCostClass(s));
  }
  for (const SourceSet set : {SourceSet::kCC, SourceSet::kSOS, SourceSet::kSB,
                              SourceSet::kStringhini, SourceSet::kYang}) {
    if (s == SourceSetName(set)) {
      std::vector<FeatureSpec> out;
      for (const FeatureSpec& f : FullCatalog()) {
        if (f.source_set == set) out.push_back(f);
      }
      return out;
    }
  }
  throw std::invalid_argument(
      "unknown feature set '" + std::string(name) +
      "' (expected all, class-a, class-b, class-c, cc, sos, sb, stringhini or "
      "yang)");
}

std::vector<double> FeatureMatrix::column(std::size_t c) const {
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
  return out;
}

std::vector<std::string> FeatureMatrix::names() const {
  std::vector<std::string> out;
  for (const FeatureSpec& s : specs) out.push_back(s.name);
  return out;
}

FeatureMatrix FeatureMatrix::SelectRows(std::span<const std::size_t> rows_) const {
  FeatureMatrix m;
  m.specs = specs;
  m.provenance = provenance;
  m.reference_time = reference_time;
  m.values.reserve(rows_.size() * cols());
  for (const std::size_t r : rows_) {
    const auto rw = row(r);
    m.values.insert(m.values.end(), rw.begin(), rw.end());
    m.ids.push_back(ids[r]);
    if (!labels.empty()) m.labels.push_back(labels[r]);
  }
  return m;
}

FeatureMatrix FeatureMatrix::SelectColumns(std::span<const std::size_t> cols_) const {
  FeatureMatrix m;
  for (const std::size_t c : cols_) m.specs.push_back(specs.at(c));
  m.ids = ids;
  m.labels = labels;
  m.provenance = provenance;
  m.reference_time = reference_time;
  m.values.reserve(rows() * cols_.size());
  for (std::size_t r = 0; r < rows(); ++r) {
    for (const std::size_t c : cols_) m.values.push_back(at(r, c));
  }
  return m;
}

FeatureMatrix FeatureMatrix::WithoutColumn(std::size_t c) const {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < cols(); ++j) {
    if (j != c) keep.push_back(j);
  }
  return SelectColumns(keep);
}

FeatureMatrix FeatureMatrix::WithLabels(std::span<const Label> new_labels) const {
  if (new_labels.size() != rows()) {
    throw std::invalid_argument("label count does not match the row count");
  }
  FeatureMatrix m = *this;
  m.labels.assign(new_labels.begin(), new_labels.end());
  return m;
}

FeatureMatrix Extract(const corpus::Dataset& dataset,
                      const std::vector<FeatureSpec>& specs,
                      const ExtractOptions& options) {
  std::vector<std::string> need_timeline, need_graph;
  for (const FeatureSpec& s : specs) {
    if (s.cost_class == CostClass::kB && !dataset.has_timelines()) {
      need_timeline.push_back(s.name);
    }
    if (s.cost_class == CostClass::kC && !dataset.has_graph()) {
      need_graph.push_back(s.name);
    }
  }
  if (!need_timeline.empty()) {
    throw InsufficientDataError("features [" + Join(need_timeline, "; ") +
                                "] need timelines, which are not loaded");
  }
  if (!need_graph.empty()) {
    throw InsufficientDataError("features [" + Join(need_graph, "; ") +
                                "] need the relationship graph, which is not "
                                "loaded");
  }
  FeatureMatrix m;
  m.specs = specs;
  m.reference_time = dataset.reference_time();
  m.provenance = dataset.provenance() + " | reference_time=" +
                 FormatTimestamp(dataset.reference_time()) + " | age_unit=days";
  m.ids.reserve(dataset.size());
  for (const corpus::Account& a : dataset.accounts()) {
    m.ids.push_back(a.id);
    m.labels.push_back(a.label);
  }
  m.values.assign(dataset.size() * specs.size(), 0.0);
  const rules::DatasetAggregates aggregates(dataset);
  const RowBuilder builder(dataset, specs, aggregates, options.rules);
  ParallelFor(dataset.size(), options.jobs, [&](std::size_t i) {
    builder.Build(i, m.values.data() + i * specs.size());
  });
  for (const double v : m.values) {
    if (!std::isfinite(v)) throw std::logic_error("non-finite feature value");
  }
  return m;
}

NeighborStats ComputeNeighborStats(const corpus::Dataset& dataset,
                                   std::size_t index) {
  const UserId id = dataset.account(index).id;
  const auto& graph = dataset.graph();
  std::vector<double> friend_followers;
  for (const UserId f : graph.friends(id)) {
    friend_followers.push_back(NeighborFollowers(dataset, f));
  }
  std::vector<double> follower_tweets;
  for (const UserId f : graph.followers(id)) {
    follower_tweets.push_back(NeighborTweets(dataset, f));
  }
  NeighborStats s;
  s.avg_neighbors_followers = Mean(friend_followers);
  s.avg_neighbors_tweets = Mean(follower_tweets);
  if (!friend_followers.empty()) {
    s.friends_to_median_neighbors_followers =
        SafeRatio(static_cast<double>(dataset.account(index).friends_count),
                  signals::Median(friend_followers));
  }
  return s;
}

double BiLinkRatio(const corpus::Dataset& dataset, std::size_t index) {
  const UserId id = dataset.account(index).id;
  const auto friends = dataset.graph().friends(id);
  const auto followers = dataset.graph().followers(id);
  if (friends.empty()) return 0.0;
  std::vector<UserId> both;
  std::set_intersection(friends.begin(), friends.end(), followers.begin(),
                        followers.end(), std::back_inserter(both));
  return static_cast<double>(both.size()) / static_cast<double>(friends.size());
}

void WriteMatrixCsv(std::ostream& out, const FeatureMatrix& m) {
  std::vector<std::string> header = m.names();
  header.push_back("label");
  WriteCsvRow(out, header);
  std::vector<std::string> cells(m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) cells[c] = FormatDouble(m.at(r, c));
    cells.back() = m.labels.empty() ? "" : std::string(LabelName(m.labels[r]));
    WriteCsvRow(out, cells);
  }
}

void WriteMatrixJsonl(std::ostream& out, const FeatureMatrix& m) {
  using nlohmann::json;
  json features = json::array();
  for (const FeatureSpec& s : m.specs) {
    features.push_back({{"id", s.id},
                        {"name", s.name},
                        {"cost_class", CostClassName(s.cost_class)},
                        {"source_set", SourceSetName(s.source_set)},
                        {"kind", FeatureKindName(s.kind)}});
  }
  json meta = {{"type", "metadata"},
               {"features", features},
               {"rows", m.rows()},
               {"provenance", m.provenance},
               {"reference_time", FormatTimestamp(m.reference_time)},
               {"age_unit", "days"}};
  out << meta.dump() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json values = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) values.push_back(m.at(r, c));
    json row = {{"id", m.ids[r]},
                {"label", m.labels.empty() ? "" : LabelName(m.labels[r])},
                {"values", values}};
    out << row.dump() << '\n';
  }
}

}  // namespace fakescope::features
