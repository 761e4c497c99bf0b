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

// Feature catalog and extraction.
//
// The catalog lists every feature of the five source sets (49 entries).
// Three entries name the same measurement as another entry: "tweets >= 50"
// and "0 tweets" read the tweet count, "tweet-links >= 90%" reads the URL
// ratio. They are aliases and are left out of filtered listings, which
// therefore hold 46 distinct features (19 in class A).

#ifndef FAKESCOPE_FEATURES_H_
#define FAKESCOPE_FEATURES_H_

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakescope/corpus.h"
#include "fakescope/rules.h"

namespace fakescope::features {

// Crawling cost: A needs the profile, B the timeline, C the relationships.
enum class CostClass { kA = 0, kB = 1, kC = 2 };
enum class SourceSet { kCC, kSOS, kSB, kStringhini, kYang };
enum class FeatureKind { kBoolean, kCount, kRatio, kDuration };

std::string_view CostClassName(CostClass c);  // "A", "B", "C"
CostClass ParseCostClass(std::string_view text);
std::string_view SourceSetName(SourceSet s);
std::string_view FeatureKindName(FeatureKind k);

struct FeatureSpec {
  std::string id;    // "cc5", "yang2", ...
  std::string name;  // "number of followers", "bi-link ratio", ...
  CostClass cost_class = CostClass::kA;
  SourceSet source_set = SourceSet::kCC;
  FeatureKind kind = FeatureKind::kCount;
  // Id of the entry whose value this one reuses; empty if distinct.
  std::string alias_of;

  bool is_alias() const { return !alias_of.empty(); }
  bool operator==(const FeatureSpec&) const = default;
};

// All 49 entries in a fixed order (CC, SOS, SB, Stringhini, Yang).
const std::vector<FeatureSpec>& FullCatalog();

// Distinct features, optionally restricted to one cost class.
std::vector<FeatureSpec> Catalog(std::optional<CostClass> filter = {});

// By id or name. Throws std::invalid_argument.
const FeatureSpec& FindFeature(std::string_view id_or_name);

// "class-a", "class-b", "class-c", "all", or a source set name
// ("cc", "sos", "sb", "stringhini", "yang"); source sets keep aliases.
std::vector<FeatureSpec> NamedFeatureSet(std::string_view name);

struct FeatureMatrix {
  std::vector<FeatureSpec> specs;
  std::vector<double> values;  // row-major, rows() * cols()
  std::vector<UserId> ids;
  std::vector<Label> labels;
  std::string provenance;
  Timestamp reference_time = 0;

  std::size_t rows() const { return ids.size(); }
  std::size_t cols() const { return specs.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values).subspan(r * cols(), cols());
  }
  std::vector<double> column(std::size_t c) const;
  std::vector<std::string> names() const;

  FeatureMatrix SelectRows(std::span<const std::size_t> rows) const;
  FeatureMatrix SelectColumns(std::span<const std::size_t> cols) const;
  FeatureMatrix WithoutColumn(std::size_t c) const;
  FeatureMatrix WithLabels(std::span<const Label> labels) const;
};

struct ExtractOptions {
  rules::RuleConfig rules;
  int jobs = 1;
};

// Rows follow the dataset's account order (ascending id). Throws
// InsufficientDataError naming the features when the dataset lacks the
// timelines (class B) or the graph (class C) they need.
FeatureMatrix Extract(const corpus::Dataset& dataset,
                      const std::vector<FeatureSpec>& specs,
                      const ExtractOptions& options = {});

struct NeighborStats {
  double avg_neighbors_followers = 0;
  double avg_neighbors_tweets = 0;
  double friends_to_median_neighbors_followers = 0;
};

// Friends' followers for the average and median, followers' tweets for the
// second average. Throws DataError naming a neighbor without statistics.
NeighborStats ComputeNeighborStats(const corpus::Dataset& dataset,
                                   std::size_t index);

// |friends and followers| / |friends| over the graph sample; 0 without
// friends.
double BiLinkRatio(const corpus::Dataset& dataset, std::size_t index);

// CSV: feature names then "label". JSON lines: a metadata record, then one
// object per account.
void WriteMatrixCsv(std::ostream& out, const FeatureMatrix& m);
void WriteMatrixJsonl(std::ostream& out, const FeatureMatrix& m);

}  // namespace fakescope::features

#endif  // FAKESCOPE_FEATURES_H_
