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

// Hand-traced accounts for the CC scoring algorithm.

#ifndef FAKESCOPE_TESTS_CC_FIXTURES_H_
#define FAKESCOPE_TESTS_CC_FIXTURES_H_

#include <vector>

#include "fakescope/corpus.h"

namespace fakescope::fixtures {

inline corpus::Tweet Tweet(TweetId id, UserId user, const std::string& text,
                           const std::string& source) {
  corpus::Tweet t;
  t.id = id;
  t.user_id = user;
  t.created_at = 1360000000 + static_cast<Timestamp>(id);
  t.text = text;
  t.source = source;
  const corpus::EntityCounts e = corpus::CountEntities(text);
  t.num_hashtags = e.hashtags;
  t.num_mentions = e.mentions;
  t.num_urls = e.urls;
  return t;
}

inline constexpr UserId kAllSatisfied = 1;  // every CC rule holds: +25
inline constexpr UserId kAllFailedApi = 2;  // every rule fails, API only: -19
inline constexpr UserId kZeroScore = 3;     // 9 human points, 9 bot points

inline corpus::Dataset CcFixtureDataset() {
  corpus::DatasetParts parts;
  parts.reference_time = 1372636800;
  parts.provenance = "cc fixtures";

  corpus::Account a;
  a.id = kAllSatisfied;
  a.screen_name = "alice";
  a.name = "Alice";
  a.created_at = 1262304000;
  a.location = "Rome";
  a.description = "Tea, books and long walks.";
  a.url = "http://alice.example";
  a.followers_count = 100;
  a.friends_count = 50;
  a.statuses_count = 200;
  a.listed_count = 2;
  a.label = Label::kHuman;
  parts.accounts.push_back(a);
  corpus::Tweet t1 = Tweet(100, kAllSatisfied, "Hello, world! #tea @bob", "web");
  t1.geo = true;
  t1.favorite_count = 1;
  t1.retweet_count = 2;
  parts.tweets.push_back(t1);
  parts.tweets.push_back(Tweet(101, kAllSatisfied, "morning walk", "Twitter for iPhone"));
  parts.tweets.push_back(Tweet(102, kAllSatisfied, "lunch time", "Twitter for Android"));
  parts.tweets.push_back(Tweet(103, kAllSatisfied, "I'm at Cafe Roma", "foursquare"));
  parts.tweets.push_back(Tweet(104, kAllSatisfied, "photo of the day", "Instagram"));

  corpus::Account b;
  b.id = kAllFailedApi;
  b.screen_name = "xq7301";
  b.created_at = 1356998400;
  b.default_profile_image = true;
  b.followers_count = 3;
  b.friends_count = 500;
  b.statuses_count = 10;
  b.label = Label::kFake;
  parts.accounts.push_back(b);
  parts.tweets.push_back(Tweet(200, kAllFailedApi, "http://spam.example/a", "twitterfeed"));
  parts.tweets.push_back(Tweet(201, kAllFailedApi, "http://spam.example/b", "twitterfeed"));

  // Holds CC1, 2, 4, 5, 6, 7, 17, 19, 20 (+9). Fails CC3, 9, 10, 11, 12,
  // 18 (-6), CC21 (-2) and CC22 (-1); CC8 and CC13-16 fail without penalty.
  corpus::Account c;
  c.id = kZeroScore;
  c.screen_name = "carol";
  c.name = "Carol";
  c.created_at = 1262304000;
  c.description = "hello world";
  c.followers_count = 100;
  c.friends_count = 10;
  c.statuses_count = 100;
  c.listed_count = 1;
  c.label = Label::kHuman;
  parts.accounts.push_back(c);
  parts.tweets.push_back(Tweet(300, kZeroScore, "hello world", "web"));

  return corpus::Dataset(std::move(parts));
}

}  // namespace fakescope::fixtures

#endif  // FAKESCOPE_TESTS_CC_FIXTURES_H_
