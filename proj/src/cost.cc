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

#include "fakescope/cost.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "fakescope/csv.h"
#include "json.hpp"

namespace fakescope::cost {
namespace {

std::int64_t Mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("call count overflow");
  return out;
}

std::int64_t Add(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("call count overflow");
  return out;
}

void CheckPages(const PageSizes& p) {
  if (p.profiles <= 0 || p.tweets <= 0 || p.relations <= 0 || p.timeline_cap < 0) {
    throw std::invalid_argument("page sizes must be positive");
  }
}

// Minutes in the text table, rounded to three decimals.
std::string Minutes(double m) { return FormatDouble(std::round(m * 1000) / 1000); }

std::string Optional(const std::optional<std::int64_t>& v, const std::string& note) {
  return v ? std::to_string(*v) : note;
}

}  // namespace

TargetProfile TargetProfile::Uniform(std::int64_t f, FollowerStats stats) {
  TargetProfile p;
  p.followers = f;
  if (f > 0) p.groups.push_back({stats, f});
  return p;
}

TargetProfile TargetProfile::Exact(const std::vector<FollowerStats>& followers) {
  TargetProfile p;
  p.followers = static_cast<std::int64_t>(followers.size());
  for (const FollowerStats& s : followers) p.groups.push_back({s, 1});
  return p;
}

std::int64_t CeilDiv(std::int64_t a, std::int64_t b) {
  if (a < 0 || b <= 0) throw std::invalid_argument("CeilDiv needs a >= 0 and b > 0");
  return a / b + (a % b != 0);
}

std::int64_t TimelineCallsPerFollower(std::int64_t tweets, const PageSizes& pages) {
  CheckPages(pages);
  return CeilDiv(std::min(tweets, pages.timeline_cap), pages.tweets);
}

std::int64_t RelationshipCallsPerFollower(std::int64_t friends, std::int64_t followers,
                                          const PageSizes& pages) {
  CheckPages(pages);
  return CeilDiv(followers, pages.relations) + CeilDiv(friends, pages.relations);
}

Bounds ComputeBounds(std::int64_t followers, const PageSizes& pages) {
  CheckPages(pages);
  if (followers < 0) throw std::invalid_argument("follower count must be >= 0");
  Bounds b;
  const std::int64_t profile = CeilDiv(followers, pages.profiles);
  b.best = {profile, followers, Mul(2, followers)};
  b.worst = {profile,
             Mul(CeilDiv(pages.timeline_cap, pages.tweets), followers),
             std::nullopt};
  return b;
}

CostEstimate Estimate(const TargetProfile& profile, const PageSizes& pages,
                      const RateLimits& rates) {
  CheckPages(pages);
  if (!(rates.profile > 0 && rates.timeline > 0 && rates.relationship > 0)) {
    throw std::invalid_argument("rate limits must be positive");
  }
  if (profile.followers < 0) throw std::invalid_argument("follower count must be >= 0");
  std::int64_t covered = 0;
  CostEstimate e;
  for (const FollowerGroup& g : profile.groups) {
    const FollowerStats& s = g.stats;
    if (g.count < 0 || s.tweets < 0 || s.friends < 0 || s.followers < 0) {
      throw std::invalid_argument("follower statistics must be >= 0");
    }
    covered = Add(covered, g.count);
    e.calls_timeline =
        Add(e.calls_timeline, Mul(g.count, TimelineCallsPerFollower(s.tweets, pages)));
    e.calls_relationship =
        Add(e.calls_relationship,
            Mul(g.count, RelationshipCallsPerFollower(s.friends, s.followers, pages)));
  }
  if (covered != profile.followers) {
    throw std::invalid_argument("follower statistics cover " + std::to_string(covered) +
                                " accounts, expected " +
                                std::to_string(profile.followers));
  }
  e.calls_profile = CeilDiv(profile.followers, pages.profiles);
  e.calls_follower_list = CeilDiv(profile.followers, pages.relations);
  e.bounds = ComputeBounds(profile.followers, pages);
  e.minutes_profile = static_cast<double>(e.calls_profile) / rates.profile;
  e.minutes_timeline = static_cast<double>(e.calls_timeline) / rates.timeline;
  e.minutes_relationship = static_cast<double>(e.calls_relationship) / rates.relationship;
  e.minutes_total = std::max({e.minutes_profile, e.minutes_timeline, e.minutes_relationship});
  return e;
}

HeavyFollowerScenario HeavyFollowerWorstCase(const PageSizes& pages) {
  HeavyFollowerScenario s;
  s.calls_per_follower = RelationshipCallsPerFollower(s.friends, s.followers, pages);
  return s;
}

features::CostClass ClassifierCostClass(const std::vector<features::FeatureSpec>& specs) {
  if (specs.empty()) throw std::invalid_argument("no features given");
  features::CostClass c = features::CostClass::kA;
  for (const auto& s : specs) c = std::max(c, s.cost_class);
  return c;
}

void WriteCostCsv(std::ostream& out, const CostEstimate& e) {
  WriteCsvRow(out, {"class", "calls", "best_case", "worst_case", "minutes"});
  const std::string& note = e.bounds.relationship_worst_note;
  WriteCsvRow(out, {"profile", std::to_string(e.calls_profile),
                    std::to_string(e.bounds.best.profile),
                    std::to_string(e.bounds.worst.profile), FormatDouble(e.minutes_profile)});
  WriteCsvRow(out, {"timeline", std::to_string(e.calls_timeline),
                    std::to_string(e.bounds.best.timeline),
                    std::to_string(e.bounds.worst.timeline), FormatDouble(e.minutes_timeline)});
  WriteCsvRow(out, {"relationship", std::to_string(e.calls_relationship),
                    Optional(e.bounds.best.relationship, note),
                    Optional(e.bounds.worst.relationship, note),
                    FormatDouble(e.minutes_relationship)});
  WriteCsvRow(out, {"follower_list", std::to_string(e.calls_follower_list), "", "", ""});
  WriteCsvRow(out, {"total", "", "", "", FormatDouble(e.minutes_total)});
}

void WriteCostTable(std::ostream& out, const CostEstimate& e) {
  const std::string& note = e.bounds.relationship_worst_note;
  auto line = [&](const std::string& a, const std::string& b, const std::string& c,
                  const std::string& d, const std::string& m) {
    out << std::left << std::setw(14) << a << std::right << std::setw(16) << b
        << std::setw(16) << c << std::setw(16) << d << std::setw(14) << m << '\n';
  };
  line("class", "calls", "best case", "worst case", "minutes");
  line("profile", std::to_string(e.calls_profile), std::to_string(e.bounds.best.profile),
       std::to_string(e.bounds.worst.profile), Minutes(e.minutes_profile));
  line("timeline", std::to_string(e.calls_timeline), std::to_string(e.bounds.best.timeline),
       std::to_string(e.bounds.worst.timeline), Minutes(e.minutes_timeline));
  line("relationship", std::to_string(e.calls_relationship),
       Optional(e.bounds.best.relationship, note), Optional(e.bounds.worst.relationship, note),
       Minutes(e.minutes_relationship));
  line("follower list", std::to_string(e.calls_follower_list), "", "", "");
  line("total", "", "", "", Minutes(e.minutes_total));
  const HeavyFollowerScenario heavy = HeavyFollowerWorstCase();
  out << "\nrelationship worst case: no bound. With 60M friends and 60M followers "
         "per follower the formula gives "
      << heavy.calls_per_follower << "*f calls (quoted as "
      << heavy.quoted_calls_per_follower << "*f).\n";
}

std::string CostJson(const CostEstimate& e) {
  using nlohmann::json;
  auto calls = [](const ClassCalls& c) {
    json j = {{"profile", c.profile}, {"timeline", c.timeline}};
    j["relationship"] = c.relationship ? json(*c.relationship) : json(nullptr);
    return j;
  };
  const HeavyFollowerScenario heavy = HeavyFollowerWorstCase();
  const json j = {
      {"calls", {{"profile", e.calls_profile},
                 {"timeline", e.calls_timeline},
                 {"relationship", e.calls_relationship},
                 {"follower_list", e.calls_follower_list}}},
      {"best_case", calls(e.bounds.best)},
      {"worst_case", calls(e.bounds.worst)},
      {"relationship_worst_case_note", e.bounds.relationship_worst_note},
      {"heavy_follower_scenario",
       {{"friends", heavy.friends},
        {"followers", heavy.followers},
        {"calls_per_follower", heavy.calls_per_follower},
        {"quoted_calls_per_follower", heavy.quoted_calls_per_follower}}},
      {"minutes", {{"profile", e.minutes_profile},
                   {"timeline", e.minutes_timeline},
                   {"relationship", e.minutes_relationship},
                   {"total", e.minutes_total}}}};
  return j.dump(2) + "\n";
}

}  // namespace fakescope::cost
