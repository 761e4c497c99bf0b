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

// API-call budget for crawling the followers of one target account.
//
// Profiles come 100 per call, timelines 200 tweets per call (only the
// newest 3200 are reachable), friend and follower lists 5000 ids per call.
// The three endpoints have separate rate limits and can be crawled at the
// same time, so the total time is the slowest of the three.

#ifndef FAKESCOPE_COST_H_
#define FAKESCOPE_COST_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fakescope/features.h"

namespace fakescope::cost {

struct FollowerStats {
  std::int64_t tweets = 0;     // t_i
  std::int64_t friends = 0;    // phi_i
  std::int64_t followers = 0;  // f_i
};

// `count` followers sharing the same statistics.
struct FollowerGroup {
  FollowerStats stats;
  std::int64_t count = 1;
};

struct TargetProfile {
  std::int64_t followers = 0;  // f
  // Must cover exactly `followers` accounts.
  std::vector<FollowerGroup> groups;

  // f followers with identical statistics.
  static TargetProfile Uniform(std::int64_t f, FollowerStats stats);
  // One group per follower.
  static TargetProfile Exact(const std::vector<FollowerStats>& followers);
};

struct PageSizes {
  std::int64_t profiles = 100;
  std::int64_t tweets = 200;
  std::int64_t relations = 5000;
  std::int64_t timeline_cap = 3200;
};

struct RateLimits {  // calls per minute
  double profile = 12;
  double timeline = 12;
  double relationship = 1;
};

struct ClassCalls {
  std::int64_t profile = 0;
  std::int64_t timeline = 0;
  // Empty when no bound exists.
  std::optional<std::int64_t> relationship;
};

struct Bounds {
  ClassCalls best;
  ClassCalls worst;
  // Why the relationship worst case has no value.
  std::string relationship_worst_note = "unpredictable";
};

struct CostEstimate {
  std::int64_t calls_profile = 0;
  std::int64_t calls_timeline = 0;
  std::int64_t calls_relationship = 0;
  // Listing the target's followers, reported apart from the class totals.
  std::int64_t calls_follower_list = 0;
  Bounds bounds;
  double minutes_profile = 0;
  double minutes_timeline = 0;
  double minutes_relationship = 0;
  double minutes_total = 0;  // max of the three
};

// Throws std::invalid_argument on negative counts, non-positive page sizes
// or rates, or groups that do not add up to the follower count.
CostEstimate Estimate(const TargetProfile& profile, const PageSizes& pages = {},
                      const RateLimits& rates = {});

// best = (ceil(f/100), f, 2f); worst = (ceil(f/100), 16f, none).
Bounds ComputeBounds(std::int64_t followers, const PageSizes& pages = {});

std::int64_t CeilDiv(std::int64_t a, std::int64_t b);
std::int64_t TimelineCallsPerFollower(std::int64_t tweets, const PageSizes& pages = {});
std::int64_t RelationshipCallsPerFollower(std::int64_t friends, std::int64_t followers,
                                          const PageSizes& pages = {});

// Per-follower relationship calls when every follower has 60 million
// friends and 60 million followers, as computed from the page size, next to
// the rounded constant quoted for that scenario.
struct HeavyFollowerScenario {
  std::int64_t friends = 60'000'000;
  std::int64_t followers = 60'000'000;
  std::int64_t calls_per_follower = 0;
  std::int64_t quoted_calls_per_follower = 22000;
};
HeavyFollowerScenario HeavyFollowerWorstCase(const PageSizes& pages = {});

// Most expensive class among the features. Throws std::invalid_argument on
// an empty list.
features::CostClass ClassifierCostClass(const std::vector<features::FeatureSpec>& specs);

// Rows: profile, timeline, relationship, follower list, total.
void WriteCostCsv(std::ostream& out, const CostEstimate& estimate);
void WriteCostTable(std::ostream& out, const CostEstimate& estimate);
std::string CostJson(const CostEstimate& estimate);

}  // namespace fakescope::cost

#endif  // FAKESCOPE_COST_H_
