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

// Per-account signals shared by the rule sets and the feature extractors.
// Timelines are passed newest first, as stored by Dataset.

#ifndef FAKESCOPE_SIGNALS_H_
#define FAKESCOPE_SIGNALS_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fakescope/corpus.h"

namespace fakescope::signals {

// Value used for x/0 with x > 0 so matrices stay finite.
inline constexpr double kRatioCap = 1e9;

// 0/0 = 0, x/0 = kRatioCap for x > 0, otherwise min(x/y, kRatioCap).
double SafeRatio(double numerator, double denominator);

// Fractional days between created_at and the reference time (never < 0).
double AgeDays(const corpus::Account& account, Timestamp reference_time);

// True iff at least two of the newest `window` tweets share a run of
// `run_length` consecutive equal words (lower-cased, whitespace tokens).
bool MessageSimilarity(std::span<const corpus::Tweet> tweets,
                       std::size_t window = 15, std::size_t run_length = 4);

// MessageSimilarity over the API-posted tweets only.
bool ApiTweetSimilarity(std::span<const corpus::Tweet> tweets,
                        std::size_t window = 15, std::size_t run_length = 4);

struct TimelineCounts {
  std::int64_t tweets = 0;
  std::int64_t api = 0;
  std::int64_t with_url = 0;
  std::int64_t api_with_url = 0;
  std::int64_t retweets = 0;
  std::int64_t geo = 0;
  std::int64_t favorited = 0;       // favorite_count >= 1
  std::int64_t with_hashtag = 0;
  std::int64_t with_mention = 0;
  std::int64_t not_only_urls = 0;   // text left after removing URL tokens
  std::int64_t retweeted_own = 0;   // own tweets with retweet_count >= 1
  std::int64_t with_punctuation = 0;
  std::int64_t distinct_sources = 0;
  // Indexed by SourceKind.
  std::int64_t by_kind[6] = {0, 0, 0, 0, 0, 0};
};

TimelineCounts CountTimeline(std::span<const corpus::Tweet> tweets);

// Any of . , ; : ! ? outside URL tokens.
bool HasPunctuation(std::string_view text);

// Text consisting only of URL tokens (or nothing).
bool IsOnlyUrls(std::string_view text);

// Whole-word, case-insensitive.
bool ContainsWord(std::string_view text, std::string_view word);

// Tweets containing at least one phrase (case-insensitive substring).
std::int64_t CountSpamTweets(std::span<const corpus::Tweet> tweets,
                             const std::vector<std::string>& phrases);

// Largest number of tweets sharing one trimmed text.
std::int64_t MaxRepetition(std::span<const corpus::Tweet> tweets);

// At least two of the newest `window` tweets carry the same text and a
// mention.
bool SameSentenceToMany(std::span<const corpus::Tweet> tweets,
                        std::size_t window = 20);

// At least one tweet, all from API clients.
bool OnlyApi(std::span<const corpus::Tweet> tweets);

// Median with the mean of the middle two for even sizes; 0 for empty input.
double Median(std::vector<double> values);

}  // namespace fakescope::signals

#endif  // FAKESCOPE_SIGNALS_H_
