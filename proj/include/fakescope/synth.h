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

// Deterministic synthetic corpora with per-class distributions for every raw
// field the feature catalog reads.

#ifndef FAKESCOPE_SYNTH_H_
#define FAKESCOPE_SYNTH_H_

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "fakescope/corpus.h"

namespace fakescope::corpus {

// Zero with probability p_zero, otherwise round(exp(N(mu, sigma^2))).
struct CountDist {
  double p_zero = 0.0;
  double mu = 0.0;
  double sigma = 1.0;
};

// Per-account rate: zero with probability p_zero, otherwise uniform in
// [lo, hi]. Each tweet then carries the attribute with that rate.
struct RateDist {
  double p_zero = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Order matches SourceKind: web, iphone, android, foursquare, instagram,
// other API client.
inline constexpr std::size_t kSourceKinds = 6;

struct ClassProfile {
  CountDist followers;
  CountDist friends;
  CountDist statuses;
  CountDist listed;
  CountDist favourites;
  // Account age in days: exp(N(mu, sigma^2)), clamped to the platform age.
  double age_mu = 6.0;
  double age_sigma = 0.5;

  double p_name = 1.0;
  double p_default_image = 0.0;
  double p_location = 0.5;
  double p_description = 0.5;
  double p_url = 0.3;
  double p_bot_in_bio = 0.0;
  // Picks the profile picture from a small pool shared across the corpus.
  double p_shared_image = 0.0;
  // Probability that the profile fields are drawn from the other class's
  // profile while timeline and graph keep this class's behavior.
  double p_profile_mimicry = 0.0;

  // Timeline.
  RateDist url_rate;
  RateDist hashtag_rate;
  RateDist mention_rate;
  RateDist geo_rate;
  RateDist retweet_rate;
  RateDist retweeted_rate;  // own tweets retweeted by others
  RateDist favorited_rate;
  double p_punctuation = 0.5;
  double p_template = 0.0;  // tweet copied from the shared template pool
  double p_spam_phrase = 0.0;
  std::array<double, kSourceKinds> source_weights{1, 0, 0, 0, 0, 0};
  // Probability a tweet uses the account's primary client.
  double p_primary_source = 0.5;

  // Graph sample.
  double p_bidirectional = 0.5;
  CountDist friend_followers;    // followers_count of friends
  CountDist follower_followers;  // followers_count of followers
  CountDist friend_statuses;     // statuses_count of friends
  CountDist follower_statuses;   // statuses_count of followers
};

struct SynthConfig {
  std::size_t n_humans = 0;
  std::size_t n_fakes = 0;
  std::uint64_t seed = 0;
  Timestamp reference_time = 1372636800;  // 2013-07-01T00:00:00Z
  // Stored tweets per account: min(statuses_count, timeline_cap).
  std::size_t timeline_cap = 40;
  std::size_t friend_cap = 30;
  std::size_t follower_cap = 30;
  std::size_t vocabulary_size = 3000;
  std::size_t template_pool = 30;
  std::size_t shared_image_pool = 12;
  ClassProfile human;
  ClassProfile fake;

  // Throws std::invalid_argument naming the first offending parameter.
  void Validate() const;

  // 1950 humans and 1950 fakes with class profiles modeled on the
  // purchased-follower corpora: fakes are young, follow many accounts, are
  // followed by few, rarely post links and almost never reciprocate.
  static SynthConfig PaperLike(std::uint64_t seed);
};

// Throws std::invalid_argument for an invalid config.
Dataset Synthesize(const SynthConfig& config);

// "paper-like" is the only named preset.
SynthConfig PresetConfig(std::string_view name, std::uint64_t seed);

}  // namespace fakescope::corpus

#endif  // FAKESCOPE_SYNTH_H_
