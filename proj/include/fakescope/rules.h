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

// Rule-based detectors: the 22-rule Camisani-Calzolari (CC) scoring
// algorithm, five Stateofsearch (SOS) signals and eight Socialbakers (SB)
// checks. A satisfied CC rule is evidence of a human; a satisfied SOS or SB
// rule is evidence of a fake.

#ifndef FAKESCOPE_RULES_H_
#define FAKESCOPE_RULES_H_

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fakescope/corpus.h"
#include "fakescope/metrics.h"

namespace fakescope::rules {

enum class RuleSet { kCC, kSOS, kSB };
enum class Direction { kSatisfiedMeansHuman, kSatisfiedMeansFake };

std::string_view RuleSetName(RuleSet set);  // "cc", "sos", "sb"
RuleSet ParseRuleSet(std::string_view text);

struct RuleId {
  RuleSet set = RuleSet::kCC;
  int index = 1;

  auto operator<=>(const RuleId&) const = default;
  // "CC5", "SOS3", "SB8".
  std::string Name() const;
};

struct RuleInfo {
  RuleId id;
  std::string description;
  Direction direction = Direction::kSatisfiedMeansHuman;
  bool needs_timeline = false;
  // False for pure-boolean rules whose attribute is the 0/1 outcome.
  bool has_attribute = false;
};

// CC 1-22, SOS 1-5, SB 1-8 in that order.
const std::vector<RuleInfo>& AllRules();
std::vector<RuleInfo> RulesOf(RuleSet set);
// Throws std::invalid_argument for ids outside the catalog.
const RuleInfo& GetRule(RuleId id);

struct RuleOutcome {
  RuleId rule;
  bool satisfied = false;
  std::optional<double> attribute_value;

  // attribute_value when present, else the 0/1 outcome.
  double AttributeOrOutcome() const {
    return attribute_value.value_or(satisfied ? 1.0 : 0.0);
  }
};

struct RuleConfig {
  std::vector<std::string> spam_phrases = {"diet", "make money",
                                           "work from home"};
};

// Per-dataset values computed once: accounts per profile picture hash.
class DatasetAggregates {
 public:
  explicit DatasetAggregates(const corpus::Dataset& dataset);
  int AccountsWithImage(const std::string& hash) const;

 private:
  std::map<std::string, int> image_counts_;
};

struct AccountContext {
  const corpus::Dataset& dataset;
  std::size_t index;
  const DatasetAggregates& aggregates;
  const RuleConfig& config;
};

// Throws InsufficientDataError when a timeline rule runs on a dataset
// without timelines.
RuleOutcome EvaluateRule(RuleId rule, const AccountContext& context);
// Same as calling EvaluateRule per rule, sharing the timeline summary.
std::vector<RuleOutcome> EvaluateRules(const std::vector<RuleId>& rules,
                                       const AccountContext& context);

enum class Verdict { kHuman, kNeutral, kBot };
std::string_view VerdictName(Verdict verdict);

// human iff score > 0; neutral iff -4 <= score <= 0; bot iff score < -4.
Verdict VerdictForScore(int score);

struct CcScore {
  int human_points = 0;
  int bot_points = 0;
  int score = 0;
  Verdict verdict = Verdict::kNeutral;
};

// Scores a full set of 22 CC outcomes (any order).
CcScore ScoreCc(const std::vector<RuleOutcome>& outcomes, bool only_api);
CcScore CcClassify(const AccountContext& context);

struct VerdictTable {
  RuleSet set = RuleSet::kCC;
  std::vector<RuleInfo> rules;
  std::vector<UserId> ids;
  std::vector<Label> labels;
  // outcomes[account][rule]
  std::vector<std::vector<RuleOutcome>> outcomes;
  // CC only.
  std::vector<CcScore> cc;
};

VerdictTable RunRuleset(RuleSet set, const corpus::Dataset& dataset,
                        const RuleConfig& config = {}, int jobs = 1);

struct RuleReportRow {
  RuleInfo rule;
  metrics::MetricsReport metrics;
  double i_gain = 0;
  double i_gain_star = 0;
  double pcc = 0;       // |Pearson| of the outcome with the label
  double pcc_star = 0;  // |Pearson| of the attribute with the label
  // The rule outputs one value over the whole dataset.
  bool degenerate = false;
};

// One row per rule of every rule set. The rule's prediction is fake when
// a satisfied-means-fake rule holds or a satisfied-means-human rule fails.
// Throws DataError unless both classes are present and every account is
// labeled.
std::vector<RuleReportRow> RuleReport(const corpus::Dataset& dataset,
                                      const RuleConfig& config = {},
                                      int jobs = 1,
                                      std::optional<RuleSet> only = {});

void WriteRuleReportCsv(std::ostream& out,
                        const std::vector<RuleReportRow>& rows);
void WriteRuleReportTable(std::ostream& out,
                          const std::vector<RuleReportRow>& rows);

}  // namespace fakescope::rules

#endif  // FAKESCOPE_RULES_H_
