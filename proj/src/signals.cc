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

#include "fakescope/signals.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace fakescope::signals {
namespace {

bool IsUrlToken(std::string_view token) {
  const std::string lower = ToLower(token.substr(0, 8));
  return lower.rfind("http://", 0) == 0 || lower.rfind("https://", 0) == 0;
}

bool IsWordChar(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || u >= 0x80;
}

// Hash of each window of `run` tokens; a token run is shared if two tweets
// produce the same sequence.
bool AnySharedRun(const std::vector<const corpus::Tweet*>& tweets,
                  std::size_t run) {
  std::map<std::vector<std::string>, std::size_t> first_owner;
  for (std::size_t t = 0; t < tweets.size(); ++t) {
    std::vector<std::string> words = SplitWhitespace(ToLower(tweets[t]->text));
    if (words.size() < run) continue;
    std::set<std::vector<std::string>> own;
    for (std::size_t i = 0; i + run <= words.size(); ++i) {
      own.emplace(words.begin() + static_cast<std::ptrdiff_t>(i),
                  words.begin() + static_cast<std::ptrdiff_t>(i + run));
    }
    for (const auto& gram : own) {
      auto [it, inserted] = first_owner.emplace(gram, t);
      if (!inserted && it->second != t) return true;
    }
  }
  return false;
}

}  // namespace

double SafeRatio(double numerator, double denominator) {
  if (denominator == 0.0) return numerator > 0.0 ? kRatioCap : 0.0;
  return std::min(numerator / denominator, kRatioCap);
}

double AgeDays(const corpus::Account& account, Timestamp reference_time) {
  const auto seconds = static_cast<double>(reference_time - account.created_at);
  return std::max(0.0, seconds / static_cast<double>(kSecondsPerDay));
}

bool MessageSimilarity(std::span<const corpus::Tweet> tweets,
                       std::size_t window, std::size_t run_length) {
  std::vector<const corpus::Tweet*> recent;
  for (std::size_t i = 0; i < tweets.size() && i < window; ++i) {
    recent.push_back(&tweets[i]);
  }
  return AnySharedRun(recent, run_length);
}

bool ApiTweetSimilarity(std::span<const corpus::Tweet> tweets,
                        std::size_t window, std::size_t run_length) {
  std::vector<const corpus::Tweet*> api;
  for (const corpus::Tweet& t : tweets) {
    if (api.size() == window) break;
    if (corpus::IsApiSource(t.source)) api.push_back(&t);
  }
  return AnySharedRun(api, run_length);
}

bool HasPunctuation(std::string_view text) {
  for (const std::string& token : SplitWhitespace(text)) {
    if (IsUrlToken(token)) continue;
    if (token.find_first_of(".,;:!?") != std::string::npos) return true;
  }
  return false;
}

bool IsOnlyUrls(std::string_view text) {
  for (const std::string& token : SplitWhitespace(text)) {
    if (!IsUrlToken(token)) return false;
  }
  return true;
}

bool ContainsWord(std::string_view text, std::string_view word) {
  const std::string hay = ToLower(text);
  const std::string needle = ToLower(word);
  if (needle.empty()) return false;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + 1)) {
    const bool left = pos == 0 || !IsWordChar(hay[pos - 1]);
    const std::size_t end = pos + needle.size();
    const bool right = end == hay.size() || !IsWordChar(hay[end]);
    if (left && right) return true;
  }
  return false;
}

TimelineCounts CountTimeline(std::span<const corpus::Tweet> tweets) {
  TimelineCounts c;
  std::set<std::string> sources;
  for (const corpus::Tweet& t : tweets) {
    ++c.tweets;
    const bool api = corpus::IsApiSource(t.source);
    const bool url = t.num_urls >= 1;
    c.api += api;
    c.with_url += url;
    c.api_with_url += api && url;
    c.retweets += t.is_retweet;
    c.geo += t.geo;
    c.favorited += t.favorite_count >= 1;
    c.with_hashtag += t.num_hashtags >= 1;
    c.with_mention += t.num_mentions >= 1;
    c.not_only_urls += !IsOnlyUrls(t.text);
    c.retweeted_own += !t.is_retweet && t.retweet_count >= 1;
    c.with_punctuation += HasPunctuation(t.text);
    c.by_kind[static_cast<int>(corpus::ClassifySource(t.source))] += 1;
    sources.insert(corpus::NormalizeSource(t.source));
  }
  c.distinct_sources = static_cast<std::int64_t>(sources.size());
  return c;
}

std::int64_t CountSpamTweets(std::span<const corpus::Tweet> tweets,
                             const std::vector<std::string>& phrases) {
  std::vector<std::string> lowered;
  for (const std::string& p : phrases) {
    if (!p.empty()) lowered.push_back(ToLower(p));
  }
  std::int64_t n = 0;
  for (const corpus::Tweet& t : tweets) {
    const std::string text = ToLower(t.text);
    for (const std::string& p : lowered) {
      if (text.find(p) != std::string::npos) {
        ++n;
        break;
      }
    }
  }
  return n;
}

std::int64_t MaxRepetition(std::span<const corpus::Tweet> tweets) {
  std::map<std::string, std::int64_t> counts;
  std::int64_t best = 0;
  for (const corpus::Tweet& t : tweets) {
    best = std::max(best, ++counts[Trim(t.text)]);
  }
  return best;
}

bool SameSentenceToMany(std::span<const corpus::Tweet> tweets,
                        std::size_t window) {
  std::map<std::string, int> counts;
  for (std::size_t i = 0; i < tweets.size() && i < window; ++i) {
    if (tweets[i].num_mentions < 1) continue;
    if (++counts[Trim(tweets[i].text)] >= 2) return true;
  }
  return false;
}

bool OnlyApi(std::span<const corpus::Tweet> tweets) {
  if (tweets.empty()) return false;
  return std::all_of(tweets.begin(), tweets.end(), [](const corpus::Tweet& t) {
    return corpus::IsApiSource(t.source);
  });
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                   values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower =
      *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

}  // namespace fakescope::signals
