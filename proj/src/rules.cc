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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "fakescope/csv.h"
#include "fakescope/parallel.h"
#include "fakescope/signals.h"

namespace fakescope::rules {
namespace {

using corpus::SourceKind;
using signals::SafeRatio;

constexpr int kMinFollowersForHuman = 30;
constexpr int kMinTweetsForHuman = 50;
constexpr double kSosFriendsRatio = 100;
constexpr double kSbFriendsRatio = 50;
constexpr double kSpamShare = 0.3;
constexpr std::int64_t kMinRepetitions = 4;  // "more than three times"
constexpr double kRetweetShare = 0.9;
constexpr double kLinkShare = 0.9;
constexpr double kDefaultImageAgeDays = 60;
constexpr std::int64_t kLonelyFriends = 100;
constexpr int kDuplicatePictureAccounts = 3;

std::vector<RuleInfo> BuildCatalog() {
  using D = Direction;
  const D h = D::kSatisfiedMeansHuman;
  const D f = D::kSatisfiedMeansFake;
  struct Row {
    RuleSet set;
    int index;
    const char* description;
    D direction;
    bool timeline;
    bool attribute;
  };
  const Row rows[] = {
      {RuleSet::kCC, 1, "profile contains a name", h, false, false},
      {RuleSet::kCC, 2, "profile contains an image", h, false, false},
      {RuleSet::kCC, 3, "profile contains a physical address", h, false, false},
      {RuleSet::kCC, 4, "profile contains a biography", h, false, false},
      {RuleSet::kCC, 5, "at least 30 followers", h, false, true},
      {RuleSet::kCC, 6, "inserted in a list by other users", h, false, true},
      {RuleSet::kCC, 7, "at least 50 tweets", h, false, true},
      {RuleSet::kCC, 8, "geo-localized", h, true, true},
      {RuleSet::kCC, 9, "profile contains a URL", h, false, false},
      {RuleSet::kCC, 10, "included in another user's favorites", h, true, true},
      {RuleSet::kCC, 11, "writes tweets with punctuation", h, true, true},
      {RuleSet::kCC, 12, "used a hashtag in at least one tweet", h, true, true},
      {RuleSet::kCC, 13, "logged in using an iPhone", h, true, true},
      {RuleSet::kCC, 14, "logged in using an Android device", h, true, true},
      {RuleSet::kCC, 15, "connected with Foursquare", h, true, true},
      {RuleSet::kCC, 16, "connected with Instagram", h, true, true},
      {RuleSet::kCC, 17, "logged in on the twitter.com website", h, true, true},
      {RuleSet::kCC, 18, "mentioned another user in a tweet", h, true, true},
      {RuleSet::kCC, 19, "2*followers >= friends", h, false, false},
      {RuleSet::kCC, 20, "publishes content that is not just URLs", h, true, true},
      {RuleSet::kCC, 21, "at least one tweet retweeted by others", h, true, true},
      {RuleSet::kCC, 22, "logged in through different clients", h, true, true},
      {RuleSet::kSOS, 1, "biography declares a bot", f, false, false},
      {RuleSet::kSOS, 2, "friends/followers ratio of order 100:1", f, false, true},
      {RuleSet::kSOS, 3, "same sentence to many accounts", f, true, false},
      {RuleSet::kSOS, 4, "duplicate profile picture", f, false, false},
      {RuleSet::kSOS, 5, "tweets from API", f, true, true},
      {RuleSet::kSB, 1, "friends/followers >= 50", f, false, true},
      {RuleSet::kSB, 2, "over 30% of tweets use spam phrases", f, true, true},
      {RuleSet::kSB, 3, "same tweet repeated more than 3 times", f, true, true},
      {RuleSet::kSB, 4, "over 90% of tweets are retweets", f, true, true},
      {RuleSet::kSB, 5, "over 90% of tweets are links", f, true, true},
      {RuleSet::kSB, 6, "never tweeted", f, false, true},
      {RuleSet::kSB, 7, "default image after two months", f, false, false},
      {RuleSet::kSB, 8, "no bio or location and over 100 friends", f, false, false},
  };
  std::vector<RuleInfo> out;
  for (const Row& r : rows) {
    out.push_back({{r.set, r.index}, r.description, r.direction, r.timeline,
                   r.attribute});
  }
  return out;
}

// Caches the timeline summary across the rules of one account.
class Evaluator {
 public:
  explicit Evaluator(const AccountContext& ctx)
      : ctx_(ctx), account_(ctx.dataset.account(ctx.index)) {}

  RuleOutcome Evaluate(const RuleInfo& info) {
    if (info.needs_timeline && !ctx_.dataset.has_timelines()) {
      throw InsufficientDataError("rule " + info.id.Name() +
                                  " needs timelines, which are not loaded");
    }
    RuleOutcome out{info.id, false, std::nullopt};
    auto set = [&](bool satisfied, std::optional<double> attr = std::nullopt) {
      out.satisfied = satisfied;
      out.attribute_value = attr;
    };
    const corpus::Account& a = account_;
    const auto followers = static_cast<double>(a.followers_count);
    const auto friends = static_cast<double>(a.friends_count);
    switch (info.id.set) {
      case RuleSet::kCC:
        switch (info.id.index) {
          case 1: set(!a.name.empty()); break;
          case 2: set(!a.default_profile_image); break;
          case 3: set(!a.location.empty()); break;
          case 4: set(!a.description.empty()); break;
          case 5: set(a.followers_count >= kMinFollowersForHuman, followers); break;
          case 6:
            set(a.listed_count > 0, static_cast<double>(a.listed_count));
            break;
          case 7:
            set(a.statuses_count >= kMinTweetsForHuman,
                static_cast<double>(a.statuses_count));
            break;
          case 8: Count(counts().geo, set); break;
          case 9: set(!a.url.empty()); break;
          case 10: Count(counts().favorited, set); break;
          case 11: {
            const std::int64_t n = counts().with_punctuation +
                                   (signals::HasPunctuation(a.description) ? 1 : 0);
            Count(n, set);
            break;
          }
          case 12: Count(counts().with_hashtag, set); break;
          case 13: Count(Kind(SourceKind::kIphone), set); break;
          case 14: Count(Kind(SourceKind::kAndroid), set); break;
          case 15: Count(Kind(SourceKind::kFoursquare), set); break;
          case 16: Count(Kind(SourceKind::kInstagram), set); break;
          case 17: Count(Kind(SourceKind::kWeb), set); break;
          case 18: Count(counts().with_mention, set); break;
          case 19: set(2 * a.followers_count >= a.friends_count); break;
          case 20: Count(counts().not_only_urls, set); break;
          case 21: Count(counts().retweeted_own, set); break;
          case 22:
            set(counts().distinct_sources >= 2,
                static_cast<double>(counts().distinct_sources));
            break;
        }
        break;
      case RuleSet::kSOS:
        switch (info.id.index) {
          case 1: set(signals::ContainsWord(a.description, "bot")); break;
          case 2: {
            const double r = SafeRatio(friends, followers);
            set(r >= kSosFriendsRatio, r);
            break;
          }
          case 3: set(signals::SameSentenceToMany(timeline())); break;
          case 4:
            set(!a.profile_image_hash.empty() &&
                ctx_.aggregates.AccountsWithImage(a.profile_image_hash) >=
                    kDuplicatePictureAccounts);
            break;
          case 5: Count(counts().api, set); break;
        }
        break;
      case RuleSet::kSB:
        switch (info.id.index) {
          case 1: {
            const double r = SafeRatio(friends, followers);
            set(r >= kSbFriendsRatio, r);
            break;
          }
          case 2: {
            const double r = Share(signals::CountSpamTweets(
                timeline(), ctx_.config.spam_phrases));
            set(counts().tweets > 0 && r > kSpamShare, r);
            break;
          }
          case 3: {
            const std::int64_t n = signals::MaxRepetition(timeline());
            set(n >= kMinRepetitions, static_cast<double>(n));
            break;
          }
          case 4: {
            const double r = Share(counts().retweets);
            set(counts().tweets > 0 && r > kRetweetShare, r);
            break;
          }
          case 5: {
            const double r = Share(counts().with_url);
            set(counts().tweets > 0 && r > kLinkShare, r);
            break;
          }
          case 6:
            set(a.statuses_count == 0, static_cast<double>(a.statuses_count));
            break;
          case 7:
            set(a.default_profile_image &&
                signals::AgeDays(a, ctx_.dataset.reference_time()) >
                    kDefaultImageAgeDays);
            break;
          case 8:
            set(a.description.empty() && a.location.empty() &&
                a.friends_count > kLonelyFriends);
            break;
        }
        break;
    }
    return out;
  }

  bool OnlyApi() {
    if (!ctx_.dataset.has_timelines()) {
      throw InsufficientDataError("CC scoring needs timelines");
    }
    return counts().tweets > 0 && counts().api == counts().tweets;
  }

 private:
  std::span<const corpus::Tweet> timeline() const {
    return ctx_.dataset.timeline(ctx_.index);
  }
  const signals::TimelineCounts& counts() {
    if (!have_counts_) {
      counts_ = signals::CountTimeline(timeline());
      have_counts_ = true;
    }
    return counts_;
  }
  std::int64_t Kind(SourceKind kind) {
    return counts().by_kind[static_cast<int>(kind)];
  }
  double Share(std::int64_t n) {
    return counts().tweets == 0
               ? 0.0
               : static_cast<double>(n) / static_cast<double>(counts().tweets);
  }
  template <typename Setter>
  static void Count(std::int64_t n, Setter& set) {
    set(n >= 1, static_cast<double>(n));
  }

  const AccountContext& ctx_;
  const corpus::Account& account_;
  signals::TimelineCounts counts_;
  bool have_counts_ = false;
};

void RequireLabeled(const corpus::Dataset& dataset) {
  std::size_t fakes = 0, humans = 0;
  for (const corpus::Account& a : dataset.accounts()) {
    if (a.label == Label::kUnlabeled) {
      throw DataError("rule report needs every account labeled; account " +
                      std::to_string(a.id) + " is not");
    }
    (a.label == Label::kFake ? fakes : humans) += 1;
  }
  if (fakes == 0 || humans == 0) {
    throw DataError("rule report needs both human and fake accounts");
  }
}

std::string Cell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

std::string_view RuleSetName(RuleSet set) {
  switch (set) {
    case RuleSet::kCC: return "cc";
    case RuleSet::kSOS: return "sos";
    case RuleSet::kSB: return "sb";
  }
  return "?";
}

RuleSet ParseRuleSet(std::string_view text) {
  const std::string s = ToLower(text);
  if (s == "cc") return RuleSet::kCC;
  if (s == "sos") return RuleSet::kSOS;
  if (s == "sb") return RuleSet::kSB;
  throw std::invalid_argument("unknown rule set '" + std::string(text) +
                              "' (expected cc, sos or sb)");
}

std::string RuleId::Name() const {
  std::string s(RuleSetName(set));
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s + std::to_string(index);
}

const std::vector<RuleInfo>& AllRules() {
  static const std::vector<RuleInfo> catalog = BuildCatalog();
  return catalog;
}

std::vector<RuleInfo> RulesOf(RuleSet set) {
  std::vector<RuleInfo> out;
  for (const RuleInfo& r : AllRules()) {
    if (r.id.set == set) out.push_back(r);
  }
  return out;
}

const RuleInfo& GetRule(RuleId id) {
  for (const RuleInfo& r : AllRules()) {
    if (r.id == id) return r;
  }
  throw std::invalid_argument("no rule " + id.Name());
}

DatasetAggregates::DatasetAggregates(const corpus::Dataset& dataset) {
  for (const corpus::Account& a : dataset.accounts()) {
    if (!a.profile_image_hash.empty()) ++image_counts_[a.profile_image_hash];
  }
}

int DatasetAggregates::AccountsWithImage(const std::string& hash) const {
  auto it = image_counts_.find(hash);
  return it == image_counts_.end() ? 0 : it->second;
}

RuleOutcome EvaluateRule(RuleId rule, const AccountContext& context) {
  Evaluator ev(context);
  return ev.Evaluate(GetRule(rule));
}

std::vector<RuleOutcome> EvaluateRules(const std::vector<RuleId>& rules,
                                       const AccountContext& context) {
  Evaluator ev(context);
  std::vector<RuleOutcome> out;
  out.reserve(rules.size());
  for (const RuleId id : rules) out.push_back(ev.Evaluate(GetRule(id)));
  return out;
}

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kHuman: return "human";
    case Verdict::kNeutral: return "neutral";
    case Verdict::kBot: return "bot";
  }
  return "?";
}

Verdict VerdictForScore(int score) {
  if (score > 0) return Verdict::kHuman;
  if (score >= -4) return Verdict::kNeutral;
  return Verdict::kBot;
}

CcScore ScoreCc(const std::vector<RuleOutcome>& outcomes, bool only_api) {
  CcScore s;
  std::vector<bool> seen(23, false);
  for (const RuleOutcome& o : outcomes) {
    if (o.rule.set != RuleSet::kCC || o.rule.index < 1 || o.rule.index > 22 ||
        seen[o.rule.index]) {
      throw std::invalid_argument("CC scoring needs each of the 22 CC rules once");
    }
    seen[o.rule.index] = true;
    const int i = o.rule.index;
    const int worth = i == 21 ? 2 : i == 22 ? 3 : 1;
    if (o.satisfied) {
      s.human_points += worth;
    } else if (i == 21) {
      s.bot_points += 2;
    } else if (i != 8 && (i < 13 || i > 17)) {
      s.bot_points += 1;
    }
  }
  if (outcomes.size() != 22) {
    throw std::invalid_argument("CC scoring needs each of the 22 CC rules once");
  }
  if (only_api) s.bot_points += 2;
  s.score = s.human_points - s.bot_points;
  s.verdict = VerdictForScore(s.score);
  return s;
}

CcScore CcClassify(const AccountContext& context) {
  Evaluator ev(context);
  std::vector<RuleOutcome> outcomes;
  for (const RuleInfo& r : RulesOf(RuleSet::kCC)) outcomes.push_back(ev.Evaluate(r));
  return ScoreCc(outcomes, ev.OnlyApi());
}

VerdictTable RunRuleset(RuleSet set, const corpus::Dataset& dataset,
                        const RuleConfig& config, int jobs) {
  VerdictTable table;
  table.set = set;
  table.rules = RulesOf(set);
  const DatasetAggregates aggregates(dataset);
  const std::size_t n = dataset.size();
  table.ids.resize(n);
  table.labels.resize(n);
  table.outcomes.resize(n);
  if (set == RuleSet::kCC) table.cc.resize(n);
  ParallelFor(n, jobs, [&](std::size_t i) {
    const AccountContext ctx{dataset, i, aggregates, config};
    Evaluator ev(ctx);
    table.ids[i] = dataset.account(i).id;
    table.labels[i] = dataset.account(i).label;
    for (const RuleInfo& r : table.rules) table.outcomes[i].push_back(ev.Evaluate(r));
    if (set == RuleSet::kCC) table.cc[i] = ScoreCc(table.outcomes[i], ev.OnlyApi());
  });
  return table;
}

std::vector<RuleReportRow> RuleReport(const corpus::Dataset& dataset,
                                      const RuleConfig& config, int jobs,
                                      std::optional<RuleSet> only) {
  RequireLabeled(dataset);
  const std::vector<Label> labels = dataset.labels();
  std::vector<RuleReportRow> rows;
  for (const RuleSet set : {RuleSet::kCC, RuleSet::kSOS, RuleSet::kSB}) {
    if (only && *only != set) continue;
    const VerdictTable table = RunRuleset(set, dataset, config, jobs);
    for (std::size_t r = 0; r < table.rules.size(); ++r) {
      const RuleInfo& info = table.rules[r];
      std::vector<double> outcome(labels.size()), attribute(labels.size());
      std::vector<Label> predicted(labels.size());
      for (std::size_t i = 0; i < labels.size(); ++i) {
        const RuleOutcome& o = table.outcomes[i][r];
        outcome[i] = o.satisfied ? 1.0 : 0.0;
        attribute[i] = o.AttributeOrOutcome();
        const bool fake = info.direction == Direction::kSatisfiedMeansFake
                              ? o.satisfied
                              : !o.satisfied;
        predicted[i] = fake ? Label::kFake : Label::kHuman;
      }
      RuleReportRow row;
      row.rule = info;
      row.metrics = metrics::Summarize(
          metrics::ConfusionMatrix::FromPredictions(labels, predicted));
      row.i_gain = metrics::InfoGainDiscrete(outcome, labels);
      row.i_gain_star = metrics::InfoGain(attribute, labels);
      row.pcc = std::fabs(metrics::PearsonWithLabels(outcome, labels).r);
      row.pcc_star = std::fabs(metrics::PearsonWithLabels(attribute, labels).r);
      row.degenerate = std::all_of(outcome.begin(), outcome.end(),
                                   [&](double v) { return v == outcome[0]; });
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void WriteRuleReportCsv(std::ostream& out,
                        const std::vector<RuleReportRow>& rows) {
  WriteCsvRow(out, {"rule_id", "description", "accuracy", "precision", "recall",
                    "f_measure", "mcc", "i_gain", "i_gain_star", "pcc",
                    "pcc_star", "degenerate"});
  for (const RuleReportRow& r : rows) {
    WriteCsvRow(out, {r.rule.id.Name(), r.rule.description,
                      FormatDouble(r.metrics.accuracy),
                      FormatDouble(r.metrics.precision),
                      FormatDouble(r.metrics.recall),
                      FormatDouble(r.metrics.f_measure),
                      FormatDouble(r.metrics.mcc), FormatDouble(r.i_gain),
                      FormatDouble(r.i_gain_star), FormatDouble(r.pcc),
                      FormatDouble(r.pcc_star), r.degenerate ? "1" : "0"});
  }
}

void WriteRuleReportTable(std::ostream& out,
                          const std::vector<RuleReportRow>& rows) {
  char line[256];
  std::snprintf(line, sizeof(line),
                "%-6s %-44s %6s %6s %6s %6s %6s %6s %6s %6s %6s\n", "rule",
                "description", "acc", "prec", "rec", "F-M", "MCC", "IG",
                "IG*", "Pcc", "Pcc*");
  out << line;
  for (const RuleReportRow& r : rows) {
    const auto m = [&](double v) { return r.degenerate ? std::string("---") : Cell(v); };
    std::snprintf(line, sizeof(line),
                  "%-6s %-44.44s %6s %6s %6s %6s %6s %6s %6s %6s %6s\n",
                  r.rule.id.Name().c_str(), r.rule.description.c_str(),
                  Cell(r.metrics.accuracy).c_str(), m(r.metrics.precision).c_str(),
                  m(r.metrics.recall).c_str(), m(r.metrics.f_measure).c_str(),
                  m(r.metrics.mcc).c_str(), m(r.i_gain).c_str(),
                  m(r.i_gain_star).c_str(), m(r.pcc).c_str(),
                  m(r.pcc_star).c_str());
    out << line;
  }
}

}  // namespace fakescope::rules
