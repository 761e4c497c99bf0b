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

#include "fakescope/common.h"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace fakescope {
namespace {

// Days since 1970-01-01 for a proleptic Gregorian date (Hinnant's algorithm).
std::int64_t DaysFromCivil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void CivilFromDays(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y += m <= 2;
}

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  int Digits(std::size_t count) {
    if (pos_ + count > text_.size()) Fail();
    int value = 0;
    for (std::size_t i = 0; i < count; ++i) {
      const char c = text_[pos_ + i];
      if (!std::isdigit(static_cast<unsigned char>(c))) Fail();
      value = value * 10 + (c - '0');
    }
    pos_ += count;
    return value;
  }
  void Expect(char c) {
    if (pos_ >= text_.size() || text_[pos_] != c) Fail();
    ++pos_;
  }
  bool Accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool AtEnd() const { return pos_ == text_.size(); }
  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  std::string_view Take(std::size_t count) {
    if (pos_ + count > text_.size()) Fail();
    auto out = text_.substr(pos_, count);
    pos_ += count;
    return out;
  }
  [[noreturn]] void Fail() const {
    throw std::invalid_argument("invalid timestamp '" + std::string(text_) +
                                "'");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

void CheckCivil(const Cursor& cur, int month, int day, int hour, int minute,
                int second) {
  if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 ||
      minute > 59 || second > 60) {
    cur.Fail();
  }
}

Timestamp ParseIso(std::string_view text) {
  Cursor cur(text);
  const int year = cur.Digits(4);
  cur.Expect('-');
  const int month = cur.Digits(2);
  cur.Expect('-');
  const int day = cur.Digits(2);
  int hour = 0, minute = 0, second = 0;
  if (!cur.AtEnd()) {
    if (!cur.Accept('T')) cur.Expect(' ');
    hour = cur.Digits(2);
    cur.Expect(':');
    minute = cur.Digits(2);
    if (cur.Accept(':')) second = cur.Digits(2);
    if (cur.Accept('.')) {
      while (std::isdigit(static_cast<unsigned char>(cur.Peek()))) cur.Take(1);
    }
  }
  CheckCivil(cur, month, day, hour, minute, second);
  std::int64_t offset = 0;
  if (!cur.AtEnd()) {
    if (!cur.Accept('Z')) {
      const char sign = cur.Peek();
      if (sign != '+' && sign != '-') cur.Fail();
      cur.Take(1);
      const int oh = cur.Digits(2);
      cur.Accept(':');
      const int om = cur.Digits(2);
      offset = (sign == '+' ? 1 : -1) * (oh * 3600 + om * 60);
    }
  }
  if (!cur.AtEnd()) cur.Fail();
  return DaysFromCivil(year, month, day) * kSecondsPerDay + hour * 3600 +
         minute * 60 + second - offset;
}

// "Tue Feb 12 13:14:15 +0000 2013"
Timestamp ParseTwitter(std::string_view text) {
  static constexpr std::array<std::string_view, 12> kMonths = {
      "Jan", "Feb", "Mar", "Apr", "May", "Jun",
      "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  Cursor cur(text);
  cur.Take(3);
  cur.Expect(' ');
  const auto mon = cur.Take(3);
  int month = 0;
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    if (kMonths[i] == mon) month = static_cast<int>(i) + 1;
  }
  cur.Expect(' ');
  const int day = cur.Digits(2);
  cur.Expect(' ');
  const int hour = cur.Digits(2);
  cur.Expect(':');
  const int minute = cur.Digits(2);
  cur.Expect(':');
  const int second = cur.Digits(2);
  cur.Expect(' ');
  const char sign = cur.Peek();
  if (sign != '+' && sign != '-') cur.Fail();
  cur.Take(1);
  const int oh = cur.Digits(2);
  const int om = cur.Digits(2);
  cur.Expect(' ');
  const int year = cur.Digits(4);
  if (!cur.AtEnd()) cur.Fail();
  CheckCivil(cur, month, day, hour, minute, second);
  const std::int64_t offset = (sign == '+' ? 1 : -1) * (oh * 3600 + om * 60);
  return DaysFromCivil(year, month, day) * kSecondsPerDay + hour * 3600 +
         minute * 60 + second - offset;
}

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

}  // namespace

std::string_view LabelName(Label label) {
  switch (label) {
    case Label::kHuman:
      return "human";
    case Label::kFake:
      return "fake";
    case Label::kUnlabeled:
      return "";
  }
  return "";
}

Label ParseLabel(std::string_view text) {
  const std::string lower = ToLower(Trim(text));
  if (lower == "human") return Label::kHuman;
  if (lower == "fake") return Label::kFake;
  if (lower.empty()) return Label::kUnlabeled;
  throw std::invalid_argument("invalid label '" + std::string(text) +
                              "' (expected human, fake or empty)");
}

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && IsSpace(text[begin])) ++begin;
  while (end > begin && IsSpace(text[end - 1])) --end;
  return std::string(text.substr(begin, end - begin));
}

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

std::string Join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

Timestamp ParseTimestamp(std::string_view text) {
  const std::string trimmed = Trim(text);
  if (trimmed.empty()) throw std::invalid_argument("empty timestamp");
  if (std::isdigit(static_cast<unsigned char>(trimmed[0]))) {
    return ParseIso(trimmed);
  }
  return ParseTwitter(trimmed);
}

std::string FormatTimestamp(Timestamp ts) {
  std::int64_t days = ts / kSecondsPerDay;
  std::int64_t rem = ts % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  std::int64_t y;
  unsigned m, d;
  CivilFromDays(days, y, m, d);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                static_cast<long long>(y), m, d,
                static_cast<long long>(rem / 3600),
                static_cast<long long>((rem / 60) % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

}  // namespace fakescope
