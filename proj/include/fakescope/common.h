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

// Shared vocabulary types, error classes and small string/number helpers.

#ifndef FAKESCOPE_COMMON_H_
#define FAKESCOPE_COMMON_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fakescope {

using UserId = std::uint64_t;
using TweetId = std::uint64_t;

// Seconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

inline constexpr std::int64_t kSecondsPerDay = 86400;

// Fake is the positive class everywhere in the toolkit.
enum class Label { kHuman, kFake, kUnlabeled };

std::string_view LabelName(Label label);
// Accepts "human", "fake" and "" (unlabeled). Throws std::invalid_argument.
Label ParseLabel(std::string_view text);

inline bool IsFake(Label label) { return label == Label::kFake; }

// Malformed, inconsistent or missing input data. The CLI exits with code 2.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A rule or feature needs a data class (timelines, graph) that is absent.
class InsufficientDataError : public DataError {
 public:
  using DataError::DataError;
};

// Shortest decimal representation that round-trips to the same double.
std::string FormatDouble(double value);

std::string ToLower(std::string_view text);
std::string Trim(std::string_view text);
std::vector<std::string> SplitWhitespace(std::string_view text);
std::string Join(const std::vector<std::string>& parts, std::string_view sep);

// ISO-8601 UTC ("2013-02-12T13:14:15Z", fractional seconds and numeric
// offsets accepted) or the Twitter API format ("Tue Feb 12 13:14:15 +0000
// 2013"). Throws std::invalid_argument.
Timestamp ParseTimestamp(std::string_view text);
std::string FormatTimestamp(Timestamp ts);

}  // namespace fakescope

#endif  // FAKESCOPE_COMMON_H_
