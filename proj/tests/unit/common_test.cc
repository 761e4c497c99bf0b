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

#include <gtest/gtest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "fakescope/common.h"
#include "fakescope/csv.h"
#include "fakescope/parallel.h"
#include "fakescope/random.h"

namespace fakescope {
namespace {

TEST(FormatDouble, RoundTripsAndIsShort) {
  EXPECT_EQ(FormatDouble(0.0), "0");
  EXPECT_EQ(FormatDouble(200.0), "200");
  EXPECT_EQ(FormatDouble(0.5), "0.5");
  EXPECT_EQ(FormatDouble(std::numeric_limits<double>::infinity()), "inf");
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.Normal() * std::pow(10.0, static_cast<double>(rng.UniformInt(20)) - 10);
    EXPECT_EQ(std::strtod(FormatDouble(v).c_str(), nullptr), v);
  }
}

TEST(Labels, ParseAndName) {
  EXPECT_EQ(ParseLabel("human"), Label::kHuman);
  EXPECT_EQ(ParseLabel("fake"), Label::kFake);
  EXPECT_EQ(ParseLabel(""), Label::kUnlabeled);
  EXPECT_THROW(ParseLabel("robot"), std::invalid_argument);
  EXPECT_EQ(LabelName(Label::kFake), "fake");
}

TEST(Timestamps, IsoAndTwitterFormats) {
  EXPECT_EQ(ParseTimestamp("2013-07-01T00:00:00Z"), 1372636800);
  EXPECT_EQ(ParseTimestamp("Mon Jul 01 00:00:00 +0000 2013"), 1372636800);
  EXPECT_EQ(ParseTimestamp("2013-07-01T02:00:00+02:00"), 1372636800);
  EXPECT_EQ(FormatTimestamp(1372636800), "2013-07-01T00:00:00Z");
  EXPECT_EQ(ParseTimestamp(FormatTimestamp(-86399)), -86399);
  EXPECT_THROW(ParseTimestamp("yesterday"), std::invalid_argument);
}

TEST(Strings, Helpers) {
  EXPECT_EQ(ToLower("AbC"), "abc");
  EXPECT_EQ(Trim("  x y \n"), "x y");
  EXPECT_EQ(SplitWhitespace(" a  b\tc "), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(Join({"a", "b"}, ", "), "a, b");
}

TEST(Random, HashIsFnv1a) {
  EXPECT_EQ(HashString(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(HashString("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Random, DeriveSeedDependsOnWholePath) {
  EXPECT_EQ(DeriveSeed(7, {1, 2}), DeriveSeed(7, {1, 2}));
  EXPECT_NE(DeriveSeed(7, {1, 2}), DeriveSeed(7, {2, 1}));
  EXPECT_NE(DeriveSeed(7, {1}), DeriveSeed(8, {1}));
  EXPECT_NE(DeriveSeed(7, {1}), DeriveSeed(7, {1, 0}));
}

TEST(Random, StreamsAreReproducible) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.NextU64(), b.NextU64());
}

TEST(Random, UniformIntStaysInRangeAndCoversIt) {
  Rng rng(9);
  std::vector<int> seen(7, 0);
  for (int i = 0; i < 7000; ++i) {
    const auto v = rng.UniformInt(7);
    ASSERT_LT(v, 7u);
    ++seen[v];
  }
  for (const int c : seen) EXPECT_GT(c, 800);
  EXPECT_THROW(rng.UniformInt(0), std::invalid_argument);
}

TEST(Random, NormalMoments) {
  Rng rng(3);
  double sum = 0, sq = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.Normal();
    sum += x;
    sq += x * x;
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sq / n, 1.0, 0.02);
}

TEST(Random, ShuffleIsAPermutation) {
  Rng rng(4);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  rng.Shuffle(v);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(Csv, QuotedFieldsRoundTrip) {
  const std::vector<std::string> fields = {"plain", "with,comma", "with \"quote\"",
                                           "multi\nline", ""};
  std::ostringstream out;
  WriteCsvRow(out, {"a", "b", "c", "d", "e"});
  WriteCsvRow(out, fields);
  std::istringstream in(out.str());
  const auto rows = ReadCsv(in, "mem");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].fields, fields);
  EXPECT_EQ(rows[1].line, 2u);
}

TEST(Csv, UnterminatedQuoteNamesTheSource) {
  std::istringstream in("a,b\n\"open,1\n");
  try {
    ReadCsv(in, "users.csv");
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find("users.csv"), std::string::npos);
  }
}

TEST(Csv, TableLooksUpColumns) {
  std::istringstream in("id,label\n1,fake\n");
  CsvTable t(ReadCsv(in, "t.csv"), "t.csv");
  EXPECT_EQ(t.size(), 1u);
  EXPECT_EQ(t.column("label"), 1u);
  EXPECT_FALSE(t.has_column("name"));
  EXPECT_THROW(t.column("name"), DataError);
}

TEST(ParallelFor, RunsEveryIndexOnce) {
  for (const int jobs : {1, 2, 8}) {
    std::vector<int> hits(100, 0);
    ParallelFor(hits.size(), jobs, [&](std::size_t i) { hits[i] += 1; });
    for (const int h : hits) EXPECT_EQ(h, 1);
  }
}

TEST(ParallelFor, RethrowsLowestFailingIndex) {
  try {
    ParallelFor(20, 4, [](std::size_t i) {
      if (i == 13 || i == 5) throw std::runtime_error("task " + std::to_string(i));
    });
    FAIL() << "expected an exception";
  } catch (const std::runtime_error& e) {
    EXPECT_STREQ(e.what(), "task 5");
  }
}

}  // namespace
}  // namespace fakescope
