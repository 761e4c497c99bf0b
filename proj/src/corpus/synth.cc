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

#include "fakescope/synth.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "fakescope/random.h"

namespace fakescope::corpus {
namespace {

constexpr Timestamp kPlatformLaunch = 1142899200;  // 2006-03-21
constexpr UserId kFirstAccountId = 100000;
constexpr UserId kFirstNeighborId = 1000000000;
constexpr TweetId kTweetIdStride = 1000;
constexpr std::int64_t kTimelineWindowDays = 400;

constexpr std::string_view kSourceLabels[] = {
    "web", "Twitter for iPhone", "Twitter for Android", "foursquare",
    "Instagram"};
constexpr std::string_view kApiClients[] = {"api", "TweetDeck", "twitterfeed",
                                            "dlvr.it", "Buffer"};
constexpr std::string_view kSpamPhrases[] = {"diet", "make money",
                                             "work from home"};
constexpr std::string_view kCities[] = {"Rome", "Milan", "Pisa", "London",
                                        "New York", "Paris", "Madrid",
                                        "Berlin", "Turin", "Naples"};

void CheckProbability(double p, const std::string& name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(name + " must be a probability in [0, 1]");
  }
}

void CheckFinite(double v, const std::string& name) {
  if (!std::isfinite(v)) throw std::invalid_argument(name + " must be finite");
}

void CheckCount(const CountDist& d, const std::string& name) {
  CheckProbability(d.p_zero, name + ".p_zero");
  CheckFinite(d.mu, name + ".mu");
  CheckFinite(d.sigma, name + ".sigma");
  if (d.sigma < 0) throw std::invalid_argument(name + ".sigma must be >= 0");
}

void CheckRate(const RateDist& d, const std::string& name) {
  CheckProbability(d.p_zero, name + ".p_zero");
  CheckProbability(d.lo, name + ".lo");
  CheckProbability(d.hi, name + ".hi");
  if (d.lo > d.hi) throw std::invalid_argument(name + ".lo exceeds hi");
}

void CheckProfile(const ClassProfile& p, const std::string& cls) {
  CheckCount(p.followers, cls + ".followers");
  CheckCount(p.friends, cls + ".friends");
  CheckCount(p.statuses, cls + ".statuses");
  CheckCount(p.listed, cls + ".listed");
  CheckCount(p.favourites, cls + ".favourites");
  CheckFinite(p.age_mu, cls + ".age_mu");
  CheckFinite(p.age_sigma, cls + ".age_sigma");
  if (p.age_sigma < 0) throw std::invalid_argument(cls + ".age_sigma < 0");
  const std::pair<double, const char*> probs[] = {
      {p.p_name, "p_name"},
      {p.p_default_image, "p_default_image"},
      {p.p_location, "p_location"},
      {p.p_description, "p_description"},
      {p.p_url, "p_url"},
      {p.p_bot_in_bio, "p_bot_in_bio"},
      {p.p_shared_image, "p_shared_image"},
      {p.p_profile_mimicry, "p_profile_mimicry"},
      {p.p_punctuation, "p_punctuation"},
      {p.p_template, "p_template"},
      {p.p_spam_phrase, "p_spam_phrase"},
      {p.p_primary_source, "p_primary_source"},
      {p.p_bidirectional, "p_bidirectional"}};
  for (const auto& [v, name] : probs) CheckProbability(v, cls + "." + name);
  CheckRate(p.url_rate, cls + ".url_rate");
  CheckRate(p.hashtag_rate, cls + ".hashtag_rate");
  CheckRate(p.mention_rate, cls + ".mention_rate");
  CheckRate(p.geo_rate, cls + ".geo_rate");
  CheckRate(p.retweet_rate, cls + ".retweet_rate");
  CheckRate(p.retweeted_rate, cls + ".retweeted_rate");
  CheckRate(p.favorited_rate, cls + ".favorited_rate");
  double total = 0;
  for (const double w : p.source_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument(cls + ".source_weights must be >= 0");
    }
    total += w;
  }
  if (total <= 0) {
    throw std::invalid_argument(cls + ".source_weights must not all be 0");
  }
  CheckCount(p.friend_followers, cls + ".friend_followers");
  CheckCount(p.follower_followers, cls + ".follower_followers");
  CheckCount(p.friend_statuses, cls + ".friend_statuses");
  CheckCount(p.follower_statuses, cls + ".follower_statuses");
}

std::int64_t Draw(Rng& rng, const CountDist& d) {
  if (rng.Bernoulli(d.p_zero)) return 0;
  const double v = std::round(rng.LogNormal(d.mu, d.sigma));
  return static_cast<std::int64_t>(std::min(v, 1e12));
}

double Draw(Rng& rng, const RateDist& d) {
  if (rng.Bernoulli(d.p_zero)) return 0.0;
  return rng.Uniform(d.lo, d.hi);
}

// Pronounceable pseudo-words; none equals a rule keyword.
std::vector<std::string> MakeVocabulary(std::size_t n, std::uint64_t seed) {
  static constexpr std::string_view kOnsets[] = {
      "b", "c", "d", "f", "g", "l", "m", "n", "p", "r", "s", "t", "v", "z",
      "br", "ch", "st", "tr"};
  static constexpr std::string_view kVowels[] = {"a", "e", "i", "o", "u",
                                                 "ai", "ea", "ou"};
  Rng rng(seed);
  std::vector<std::string> words;
  std::set<std::string> seen;
  while (words.size() < n) {
    std::string w;
    const auto syllables = 1 + rng.UniformInt(3);
    for (std::uint64_t s = 0; s < syllables; ++s) {
      w += kOnsets[rng.UniformInt(std::size(kOnsets))];
      w += kVowels[rng.UniformInt(std::size(kVowels))];
    }
    if (rng.Bernoulli(0.3)) w += "n";
    if (w.find("bot") != std::string::npos ||
        w.find("diet") != std::string::npos || !seen.insert(w).second) {
      continue;
    }
    words.push_back(std::move(w));
  }
  return words;
}

struct Shared {
  std::vector<std::string> vocabulary;
  std::vector<std::string> templates;
};

std::string RandomWords(Rng& rng, const std::vector<std::string>& vocab,
                        std::size_t lo, std::size_t hi) {
  const std::size_t n = lo + rng.UniformInt(hi - lo + 1);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out += ' ';
    out += vocab[rng.UniformInt(vocab.size())];
  }
  return out;
}

std::string Handle(Rng& rng) {
  return "user" + std::to_string(rng.UniformInt(1000000));
}

std::string ShortLink(Rng& rng) {
  static constexpr char kAlnum[] =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";
  std::string s = "http://t.co/";
  for (int i = 0; i < 8; ++i) s += kAlnum[rng.UniformInt(sizeof(kAlnum) - 1)];
  return s;
}

struct AccountOutput {
  Account account;
  std::vector<Tweet> tweets;
  std::vector<Edge> edges;
  std::vector<std::pair<UserId, NeighborSummary>> neighbors;
};

AccountOutput MakeAccount(const SynthConfig& config, const Shared& shared,
                          std::size_t index, UserId id, Label label) {
  const bool fake = label == Label::kFake;
  const ClassProfile& own = fake ? config.fake : config.human;
  const ClassProfile& other = fake ? config.human : config.fake;
  Rng rng(DeriveSeed(config.seed, {1, index}));
  const ClassProfile& pp = rng.Bernoulli(own.p_profile_mimicry) ? other : own;

  AccountOutput out;
  Account& a = out.account;
  a.id = id;
  a.label = label;
  a.screen_name = "u" + std::to_string(id);
  if (rng.Bernoulli(pp.p_name)) {
    a.name = RandomWords(rng, shared.vocabulary, 1, 2);
  }
  const double max_age =
      static_cast<double>(config.reference_time - kPlatformLaunch) /
      kSecondsPerDay;
  const double age_days =
      std::clamp(rng.LogNormal(pp.age_mu, pp.age_sigma), 1.0, max_age);
  a.created_at = config.reference_time -
                 static_cast<Timestamp>(std::llround(age_days * kSecondsPerDay));
  a.followers_count = Draw(rng, pp.followers);
  a.friends_count = Draw(rng, pp.friends);
  a.statuses_count = Draw(rng, pp.statuses);
  a.listed_count = Draw(rng, pp.listed);
  a.favourites_count = Draw(rng, pp.favourites);
  if (rng.Bernoulli(pp.p_url)) {
    a.url = "http://www." + shared.vocabulary[rng.UniformInt(
                                shared.vocabulary.size())] + ".com";
  }
  if (rng.Bernoulli(pp.p_location)) {
    a.location = kCities[rng.UniformInt(std::size(kCities))];
  }
  if (rng.Bernoulli(pp.p_description)) {
    a.description = RandomWords(rng, shared.vocabulary, 4, 12);
    if (rng.Bernoulli(0.6)) a.description += '.';
    if (rng.Bernoulli(pp.p_bot_in_bio)) a.description += " bot";
  }
  a.default_profile_image = rng.Bernoulli(pp.p_default_image);
  if (!a.default_profile_image) {
    if (rng.Bernoulli(pp.p_shared_image)) {
      a.profile_image_hash =
          "shared" + std::to_string(rng.UniformInt(config.shared_image_pool));
    } else {
      a.profile_image_hash = "img" + std::to_string(id);
    }
  }

  // Timeline.
  const double url_rate = Draw(rng, own.url_rate);
  const double hashtag_rate = Draw(rng, own.hashtag_rate);
  const double mention_rate = Draw(rng, own.mention_rate);
  const double geo_rate = Draw(rng, own.geo_rate);
  const double retweet_rate = Draw(rng, own.retweet_rate);
  const double retweeted_rate = Draw(rng, own.retweeted_rate);
  const double favorited_rate = Draw(rng, own.favorited_rate);
  const std::size_t primary = rng.Categorical(own.source_weights);
  const std::string api_client(kApiClients[rng.UniformInt(std::size(kApiClients))]);
  const auto n_tweets = static_cast<std::size_t>(std::min<std::int64_t>(
      a.statuses_count, static_cast<std::int64_t>(config.timeline_cap)));
  const Timestamp window_start =
      std::max(a.created_at,
               config.reference_time - kTimelineWindowDays * kSecondsPerDay);
  const Timestamp window_end = config.reference_time - 60;
  for (std::size_t k = 0; k < n_tweets; ++k) {
    Tweet t;
    t.id = static_cast<TweetId>(index) * kTweetIdStride + k + 1;
    t.user_id = id;
    t.created_at =
        window_start + static_cast<Timestamp>(rng.UniformInt(
                           static_cast<std::uint64_t>(
                               std::max<Timestamp>(1, window_end - window_start))));
    std::string body;
    if (!shared.templates.empty() && rng.Bernoulli(own.p_template)) {
      body = shared.templates[rng.UniformInt(shared.templates.size())];
    } else {
      body = RandomWords(rng, shared.vocabulary, 6, 14);
      if (rng.Bernoulli(own.p_spam_phrase)) {
        body += ' ';
        body += kSpamPhrases[rng.UniformInt(std::size(kSpamPhrases))];
      }
      if (rng.Bernoulli(own.p_punctuation)) {
        body += rng.Bernoulli(0.8) ? "." : "!";
      }
    }
    t.is_retweet = rng.Bernoulli(retweet_rate);
    std::string text = t.is_retweet ? "RT @" + Handle(rng) + " " + body : body;
    if (rng.Bernoulli(mention_rate)) text = "@" + Handle(rng) + " " + text;
    if (rng.Bernoulli(hashtag_rate)) {
      text += " #" + shared.vocabulary[rng.UniformInt(shared.vocabulary.size())];
    }
    if (rng.Bernoulli(url_rate)) text += " " + ShortLink(rng);
    t.text = std::move(text);
    const std::size_t kind = rng.Bernoulli(own.p_primary_source)
                                 ? primary
                                 : rng.Categorical(own.source_weights);
    t.source = kind < std::size(kSourceLabels) ? std::string(kSourceLabels[kind])
                                               : api_client;
    t.geo = rng.Bernoulli(geo_rate);
    if (!t.is_retweet && rng.Bernoulli(retweeted_rate)) {
      t.retweet_count = 1 + static_cast<std::int64_t>(rng.UniformInt(20));
    }
    if (rng.Bernoulli(favorited_rate)) {
      t.favorite_count = 1 + static_cast<std::int64_t>(rng.UniformInt(10));
    }
    const EntityCounts e = CountEntities(t.text);
    t.num_hashtags = e.hashtags;
    t.num_mentions = e.mentions;
    t.num_urls = e.urls;
    out.tweets.push_back(std::move(t));
  }

  // Graph sample around the account, using ids private to this account.
  const UserId base = kFirstNeighborId + static_cast<UserId>(index) *
                                             (config.friend_cap +
                                              config.follower_cap);
  const auto n_friends = static_cast<std::size_t>(std::min<std::int64_t>(
      a.friends_count, static_cast<std::int64_t>(config.friend_cap)));
  const auto n_followers = static_cast<std::size_t>(std::min<std::int64_t>(
      a.followers_count, static_cast<std::int64_t>(config.follower_cap)));
  UserId next = base;
  std::size_t mutual = 0;
  for (std::size_t k = 0; k < n_friends; ++k) {
    const UserId friend_id = next++;
    out.edges.push_back({id, friend_id});
    NeighborSummary n{Draw(rng, own.friend_followers), 0};
    if (mutual < n_followers && rng.Bernoulli(own.p_bidirectional)) {
      out.edges.push_back({friend_id, id});
      n.statuses_count = Draw(rng, own.follower_statuses);
      ++mutual;
    } else {
      n.statuses_count = Draw(rng, own.friend_statuses);
    }
    out.neighbors.emplace_back(friend_id, n);
  }
  for (std::size_t k = mutual; k < n_followers; ++k) {
    const UserId follower_id = next++;
    out.edges.push_back({follower_id, id});
    out.neighbors.emplace_back(
        follower_id, NeighborSummary{Draw(rng, own.follower_followers),
                                     Draw(rng, own.follower_statuses)});
  }
  return out;
}

}  // namespace

void SynthConfig::Validate() const {
  if (reference_time <= kPlatformLaunch) {
    throw std::invalid_argument("reference_time must be after 2006-03-21");
  }
  if (vocabulary_size < 10) {
    throw std::invalid_argument("vocabulary_size must be at least 10");
  }
  if (shared_image_pool == 0) {
    throw std::invalid_argument("shared_image_pool must be positive");
  }
  if (timeline_cap >= kTweetIdStride) {
    throw std::invalid_argument("timeline_cap must be below 1000");
  }
  CheckProfile(human, "human");
  CheckProfile(fake, "fake");
}

SynthConfig SynthConfig::PaperLike(std::uint64_t seed) {
  SynthConfig c;
  c.n_humans = 1950;
  c.n_fakes = 1950;
  c.seed = seed;

  ClassProfile& h = c.human;
  h.followers = {0.01, std::log(250.0), 1.1};
  h.friends = {0.01, std::log(300.0), 1.0};
  h.statuses = {0.02, std::log(1500.0), 1.3};
  h.listed = {0.4, std::log(5.0), 1.0};
  h.favourites = {0.2, std::log(60.0), 1.5};
  h.age_mu = std::log(900.0);
  h.age_sigma = 0.5;
  h.p_name = 1.0;
  h.p_default_image = 0.05;
  h.p_location = 0.75;
  h.p_description = 0.8;
  h.p_url = 0.45;
  h.p_bot_in_bio = 0.005;
  h.p_shared_image = 0.005;
  h.p_profile_mimicry = 0.01;
  h.url_rate = {0.08, 0.1, 0.6};
  h.hashtag_rate = {0.2, 0.05, 0.4};
  h.mention_rate = {0.05, 0.2, 0.7};
  h.geo_rate = {0.7, 0.05, 0.5};
  h.retweet_rate = {0.1, 0.05, 0.4};
  h.retweeted_rate = {0.2, 0.05, 0.5};
  h.favorited_rate = {0.2, 0.05, 0.4};
  h.p_punctuation = 0.7;
  h.p_template = 0.0;
  h.p_spam_phrase = 0.002;
  h.source_weights = {0.35, 0.25, 0.2, 0.03, 0.05, 0.12};
  h.p_primary_source = 0.6;
  h.p_bidirectional = 0.6;
  h.friend_followers = {0.0, std::log(400.0), 1.5};
  h.follower_followers = {0.01, std::log(300.0), 1.3};
  h.friend_statuses = {0.01, std::log(2000.0), 1.3};
  h.follower_statuses = {0.02, std::log(1500.0), 1.3};

  ClassProfile& f = c.fake;
  f.followers = {0.15, std::log(8.0), 1.2};
  f.friends = {0.0, std::log(400.0), 0.9};
  f.statuses = {0.35, std::log(15.0), 1.5};
  f.listed = {0.97, std::log(2.0), 0.5};
  f.favourites = {0.8, std::log(5.0), 1.0};
  f.age_mu = std::log(120.0);
  f.age_sigma = 0.9;
  f.p_name = 1.0;
  f.p_default_image = 0.6;
  f.p_location = 0.15;
  f.p_description = 0.2;
  f.p_url = 0.05;
  f.p_bot_in_bio = 0.01;
  f.p_shared_image = 0.3;
  f.p_profile_mimicry = 0.01;
  f.url_rate = {0.8, 0.1, 0.5};
  f.hashtag_rate = {0.7, 0.05, 0.3};
  f.mention_rate = {0.6, 0.1, 0.4};
  f.geo_rate = {0.97, 0.05, 0.2};
  f.retweet_rate = {0.5, 0.1, 0.6};
  f.retweeted_rate = {0.9, 0.05, 0.2};
  f.favorited_rate = {0.9, 0.05, 0.2};
  f.p_punctuation = 0.4;
  f.p_template = 0.5;
  f.p_spam_phrase = 0.03;
  f.source_weights = {0.7, 0.05, 0.05, 0.0, 0.0, 0.2};
  f.p_primary_source = 0.9;
  f.p_bidirectional = 0.05;
  f.friend_followers = {0.0, std::log(3000.0), 2.0};
  f.follower_followers = {0.1, std::log(20.0), 1.2};
  f.friend_statuses = {0.01, std::log(3000.0), 1.5};
  f.follower_statuses = {0.3, std::log(30.0), 1.5};
  return c;
}

SynthConfig PresetConfig(std::string_view name, std::uint64_t seed) {
  if (name == "paper-like") return SynthConfig::PaperLike(seed);
  throw std::invalid_argument("unknown preset '" + std::string(name) +
                              "' (available: paper-like)");
}

Dataset Synthesize(const SynthConfig& config) {
  config.Validate();
  Shared shared;
  shared.vocabulary =
      MakeVocabulary(config.vocabulary_size, DeriveSeed(config.seed, {0, 0}));
  {
    Rng rng(DeriveSeed(config.seed, {0, 1}));
    for (std::size_t i = 0; i < config.template_pool; ++i) {
      shared.templates.push_back(RandomWords(rng, shared.vocabulary, 8, 14));
    }
  }
  const std::size_t n = config.n_humans + config.n_fakes;
  // Ids are a shuffled block so the classes interleave in id order.
  std::vector<UserId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = kFirstAccountId + i;
  {
    Rng rng(DeriveSeed(config.seed, {0, 2}));
    rng.Shuffle(ids);
  }
  DatasetParts parts;
  parts.reference_time = config.reference_time;
  parts.provenance = "synthetic(seed=" + std::to_string(config.seed) +
                     ", humans=" + std::to_string(config.n_humans) +
                     ", fakes=" + std::to_string(config.n_fakes) + ")";
  for (std::size_t i = 0; i < n; ++i) {
    const Label label = i < config.n_humans ? Label::kHuman : Label::kFake;
    AccountOutput out = MakeAccount(config, shared, i, ids[i], label);
    parts.accounts.push_back(std::move(out.account));
    for (Tweet& t : out.tweets) parts.tweets.push_back(std::move(t));
    for (const Edge& e : out.edges) parts.edges.push_back(e);
    for (const auto& [nid, summary] : out.neighbors) {
      parts.neighbors.emplace(nid, summary);
    }
  }
  return Dataset(std::move(parts));
}

}  // namespace fakescope::corpus
