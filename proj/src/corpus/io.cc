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

#include <charconv>
#include <fstream>
#include <sstream>

#include "fakescope/corpus.h"
#include "fakescope/csv.h"
#include "json.hpp"

namespace fakescope::corpus {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kMetaVersion = 1;

std::string ReadFileOrThrow(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// One JSON object per line, flattened into string cells under the union of
// keys so both formats share the typed readers below.
CsvTable ReadJsonLines(const fs::path& path) {
  const std::string data = ReadFileOrThrow(path);
  std::vector<std::string> header;
  std::map<std::string, std::size_t> index;
  std::vector<std::pair<std::size_t, json>> objects;
  std::istringstream in(data);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": malformed JSON: " + e.what());
    }
    if (!obj.is_object()) {
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected a JSON object");
    }
    for (const auto& [key, value] : obj.items()) {
      if (index.emplace(key, header.size()).second) header.push_back(key);
    }
    objects.emplace_back(line_no, std::move(obj));
  }
  std::vector<CsvRow> rows;
  rows.push_back(CsvRow{0, header});
  for (auto& [ln, obj] : objects) {
    CsvRow row{ln, std::vector<std::string>(header.size())};
    for (const auto& [key, value] : obj.items()) {
      std::string cell;
      if (value.is_string()) {
        cell = value.get<std::string>();
      } else if (value.is_boolean()) {
        cell = value.get<bool>() ? "1" : "0";
      } else if (!value.is_null()) {
        cell = value.dump();
      }
      row.fields[index[key]] = std::move(cell);
    }
    rows.push_back(std::move(row));
  }
  return CsvTable(std::move(rows), path.string());
}

CsvTable ReadTable(const fs::path& path, Format format) {
  if (format == Format::kJson) return ReadJsonLines(path);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return CsvTable(ReadCsv(in, path.string()), path.string());
}

class Reader {
 public:
  explicit Reader(const CsvTable& table) : table_(table) {}

  std::size_t Required(std::string_view name) const {
    return table_.column(name);
  }
  std::optional<std::size_t> Optional(std::string_view name) const {
    if (!table_.has_column(name)) return std::nullopt;
    return table_.column(name);
  }

  [[noreturn]] void Fail(const CsvRow& row, std::size_t col,
                         std::string_view name, const std::string& why) const {
    throw DataError(table_.source() + ":" + std::to_string(row.line) +
                    ":" + std::to_string(col + 1) + " (" + std::string(name) +
                    "): " + why);
  }

  std::string Str(const CsvRow& row, std::optional<std::size_t> col) const {
    return col ? row.fields[*col] : std::string();
  }

  template <typename Int>
  std::optional<Int> MaybeInt(const CsvRow& row, std::optional<std::size_t> col,
                              std::string_view name) const {
    if (!col) return std::nullopt;
    const std::string cell = Trim(row.fields[*col]);
    if (cell.empty()) return std::nullopt;
    Int value{};
    auto [ptr, ec] =
        std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (ec != std::errc() || ptr != cell.data() + cell.size()) {
      Fail(row, *col, name, "expected an integer, found '" + cell + "'");
    }
    return value;
  }

  template <typename Int>
  Int Int_(const CsvRow& row, std::optional<std::size_t> col,
           std::string_view name, bool required) const {
    auto v = MaybeInt<Int>(row, col, name);
    if (!v) {
      if (required && col) Fail(row, *col, name, "missing value");
      return Int{};
    }
    return *v;
  }

  bool Flag(const CsvRow& row, std::optional<std::size_t> col,
            std::string_view name) const {
    if (!col) return false;
    const std::string cell = ToLower(Trim(row.fields[*col]));
    if (cell.empty() || cell == "0" || cell == "false") return false;
    if (cell == "1" || cell == "true") return true;
    Fail(row, *col, name, "expected 0/1, found '" + cell + "'");
  }

  Timestamp Time(const CsvRow& row, std::size_t col,
                 std::string_view name) const {
    try {
      return ParseTimestamp(row.fields[col]);
    } catch (const std::invalid_argument& e) {
      Fail(row, col, name, e.what());
    }
  }

  Label LabelAt(const CsvRow& row, std::optional<std::size_t> col) const {
    if (!col) return Label::kUnlabeled;
    try {
      return ParseLabel(row.fields[*col]);
    } catch (const std::invalid_argument& e) {
      Fail(row, *col, "label", e.what());
    }
  }

 private:
  const CsvTable& table_;
};

std::vector<Account> LoadAccounts(const CsvTable& table) {
  Reader r(table);
  const auto c_id = r.Required("id");
  const auto c_screen = r.Required("screen_name");
  const auto c_name = r.Optional("name");
  const auto c_created = r.Required("created_at");
  const auto c_followers = r.Required("followers_count");
  const auto c_friends = r.Required("friends_count");
  const auto c_statuses = r.Required("statuses_count");
  const auto c_listed = r.Optional("listed_count");
  const auto c_favs = r.Optional("favourites_count");
  const auto c_url = r.Optional("url");
  const auto c_loc = r.Optional("location");
  const auto c_desc = r.Optional("description");
  const auto c_default = r.Optional("default_profile_image");
  const auto c_hash = r.Optional("profile_image_hash");
  const auto c_label = r.Optional("label");
  std::vector<Account> out;
  out.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const CsvRow& row = table.record(i);
    Account a;
    a.id = r.Int_<UserId>(row, c_id, "id", true);
    a.screen_name = r.Str(row, c_screen);
    a.name = r.Str(row, c_name);
    a.created_at = r.Time(row, c_created, "created_at");
    a.followers_count = r.Int_<std::int64_t>(row, c_followers, "followers_count", true);
    a.friends_count = r.Int_<std::int64_t>(row, c_friends, "friends_count", true);
    a.statuses_count = r.Int_<std::int64_t>(row, c_statuses, "statuses_count", true);
    a.listed_count = r.Int_<std::int64_t>(row, c_listed, "listed_count", false);
    a.favourites_count = r.Int_<std::int64_t>(row, c_favs, "favourites_count", false);
    a.url = r.Str(row, c_url);
    a.location = r.Str(row, c_loc);
    a.description = r.Str(row, c_desc);
    a.default_profile_image = r.Flag(row, c_default, "default_profile_image");
    a.profile_image_hash = r.Str(row, c_hash);
    a.label = r.LabelAt(row, c_label);
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<Tweet> LoadTweets(const CsvTable& table) {
  Reader r(table);
  const auto c_id = r.Required("id");
  const auto c_user = r.Required("user_id");
  const auto c_created = r.Required("created_at");
  const auto c_text = r.Required("text");
  const auto c_source = r.Optional("source");
  const auto c_rt = r.Optional("is_retweet");
  const auto c_rtc = r.Optional("retweet_count");
  const auto c_fav = r.Optional("favorite_count");
  const auto c_geo = r.Optional("geo");
  const auto c_tags = r.Optional("num_hashtags");
  const auto c_mentions = r.Optional("num_mentions");
  const auto c_urls = r.Optional("num_urls");
  std::vector<Tweet> out;
  out.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const CsvRow& row = table.record(i);
    Tweet t;
    t.id = r.Int_<TweetId>(row, c_id, "id", true);
    t.user_id = r.Int_<UserId>(row, c_user, "user_id", true);
    t.created_at = r.Time(row, c_created, "created_at");
    t.text = r.Str(row, c_text);
    t.source = r.Str(row, c_source);
    t.is_retweet = r.Flag(row, c_rt, "is_retweet");
    t.retweet_count = r.Int_<std::int64_t>(row, c_rtc, "retweet_count", false);
    t.favorite_count = r.Int_<std::int64_t>(row, c_fav, "favorite_count", false);
    t.geo = r.Flag(row, c_geo, "geo");
    // Precomputed entity columns win; blanks fall back to the text scan.
    const EntityCounts parsed = CountEntities(t.text);
    t.num_hashtags = r.MaybeInt<std::int64_t>(row, c_tags, "num_hashtags")
                         .value_or(parsed.hashtags);
    t.num_mentions = r.MaybeInt<std::int64_t>(row, c_mentions, "num_mentions")
                         .value_or(parsed.mentions);
    t.num_urls =
        r.MaybeInt<std::int64_t>(row, c_urls, "num_urls").value_or(parsed.urls);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Edge> LoadEdges(const CsvTable& table) {
  Reader r(table);
  const auto c_from = r.Required("follower_id");
  const auto c_to = r.Required("followed_id");
  std::vector<Edge> out;
  out.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const CsvRow& row = table.record(i);
    out.push_back({r.Int_<UserId>(row, c_from, "follower_id", true),
                   r.Int_<UserId>(row, c_to, "followed_id", true)});
  }
  return out;
}

std::map<UserId, NeighborSummary> LoadNeighbors(const CsvTable& table) {
  Reader r(table);
  const auto c_id = r.Required("id");
  const auto c_followers = r.Required("followers_count");
  const auto c_statuses = r.Required("statuses_count");
  std::map<UserId, NeighborSummary> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const CsvRow& row = table.record(i);
    const UserId id = r.Int_<UserId>(row, c_id, "id", true);
    NeighborSummary n{r.Int_<std::int64_t>(row, c_followers, "followers_count", true),
                      r.Int_<std::int64_t>(row, c_statuses, "statuses_count", true)};
    if (!out.emplace(id, n).second) {
      throw DataError(table.source() + ":" + std::to_string(row.line) +
                      ": duplicate neighbor id " + std::to_string(id));
    }
  }
  return out;
}

std::string ShortList(const std::vector<std::string>& items) {
  constexpr std::size_t kShown = 10;
  std::vector<std::string> shown(items.begin(),
                                 items.begin() + std::min(items.size(), kShown));
  std::string out = Join(shown, "; ");
  if (items.size() > kShown) {
    out += "; ... (" + std::to_string(items.size()) + " total)";
  }
  return out;
}

void RequireValid(const Dataset& dataset) {
  const ValidationReport report = Validate(dataset);
  if (report.ok()) return;
  std::vector<std::string> dangling, duplicates, other;
  for (const Violation& v : report.violations) {
    if (v.code.rfind("dangling", 0) == 0) {
      dangling.push_back(v.message);
    } else if (v.code == "duplicate_user_id") {
      duplicates.push_back(v.message);
    } else {
      other.push_back(v.message);
    }
  }
  if (!dangling.empty()) {
    throw DataError("dangling references: " + ShortList(dangling));
  }
  if (!duplicates.empty()) throw DataError(ShortList(duplicates));
  throw DataError("invalid corpus: " + ShortList(other));
}

std::ofstream OpenForWrite(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  return out;
}

void WriteRows(const fs::path& path, Format format,
               const std::vector<std::string>& header,
               const std::vector<std::vector<json>>& rows) {
  std::ofstream out = OpenForWrite(path);
  if (format == Format::kCsv) {
    WriteCsvRow(out, header);
    std::vector<std::string> cells(header.size());
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        cells[i] = row[i].is_string() ? row[i].get<std::string>() : row[i].dump();
      }
      WriteCsvRow(out, cells);
    }
  } else {
    for (const auto& row : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < row.size(); ++i) obj[header[i]] = row[i];
      out << obj.dump() << '\n';
    }
  }
}

}  // namespace

CorpusPaths CorpusPaths::InDirectory(const fs::path& dir, Format format) {
  const std::string ext = format == Format::kCsv ? ".csv" : ".jsonl";
  CorpusPaths paths;
  paths.users = dir / ("users" + ext);
  auto optional = [&](const std::string& stem) -> std::optional<fs::path> {
    fs::path p = dir / (stem + ext);
    if (fs::exists(p)) return p;
    return std::nullopt;
  };
  paths.tweets = optional("tweets");
  paths.edges = optional("edges");
  paths.neighbors = optional("neighbors");
  if (fs::exists(dir / "corpus.json")) paths.meta = dir / "corpus.json";
  return paths;
}

Dataset LoadDataset(const CorpusPaths& paths, Format format,
                    const LoadOptions& options) {
  if (!fs::exists(paths.users)) {
    throw DataError("missing users file " + paths.users.string());
  }
  DatasetParts parts;
  {
    const CsvTable users = [&] {
      try {
        return ReadTable(paths.users, format);
      } catch (const DataError& e) {
        // An empty file has no header at all.
        if (fs::file_size(paths.users) == 0) {
          throw DataError(paths.users.string() + ": no accounts");
        }
        throw;
      }
    }();
    parts.accounts = LoadAccounts(users);
  }
  if (parts.accounts.empty()) {
    throw DataError(paths.users.string() + ": no accounts");
  }
  parts.has_timelines = paths.tweets.has_value();
  if (paths.tweets) parts.tweets = LoadTweets(ReadTable(*paths.tweets, format));
  parts.has_graph = paths.edges.has_value();
  if (paths.edges) parts.edges = LoadEdges(ReadTable(*paths.edges, format));
  if (paths.neighbors) {
    parts.neighbors = LoadNeighbors(ReadTable(*paths.neighbors, format));
  }
  parts.provenance = paths.users.parent_path().string();
  if (paths.meta) {
    json meta;
    try {
      meta = json::parse(ReadFileOrThrow(*paths.meta));
      if (meta.contains("reference_time")) {
        parts.reference_time =
            ParseTimestamp(meta.at("reference_time").get<std::string>());
      }
      if (meta.contains("provenance")) {
        parts.provenance = meta.at("provenance").get<std::string>();
      }
    } catch (const std::exception& e) {
      throw DataError(paths.meta->string() + ": " + e.what());
    }
  }
  if (options.reference_time) parts.reference_time = options.reference_time;
  Dataset dataset(std::move(parts));
  if (options.validate) RequireValid(dataset);
  return dataset;
}

std::vector<fs::path> SaveDataset(const Dataset& dataset, const fs::path& dir,
                                  Format format) {
  fs::create_directories(dir);
  const std::string ext = format == Format::kCsv ? ".csv" : ".jsonl";
  std::vector<fs::path> written;

  {
    std::vector<std::vector<json>> rows;
    rows.reserve(dataset.size());
    for (const Account& a : dataset.accounts()) {
      rows.push_back({a.id, a.screen_name, a.name, FormatTimestamp(a.created_at),
                      a.followers_count, a.friends_count, a.statuses_count,
                      a.listed_count, a.favourites_count, a.url, a.location,
                      a.description, a.default_profile_image ? 1 : 0,
                      a.profile_image_hash, std::string(LabelName(a.label))});
    }
    const fs::path p = dir / ("users" + ext);
    WriteRows(p, format,
              {"id", "screen_name", "name", "created_at", "followers_count",
               "friends_count", "statuses_count", "listed_count",
               "favourites_count", "url", "location", "description",
               "default_profile_image", "profile_image_hash", "label"},
              rows);
    written.push_back(p);
  }
  if (dataset.has_timelines()) {
    std::vector<std::vector<json>> rows;
    rows.reserve(dataset.tweet_count());
    auto add = [&](const Tweet& t) {
      rows.push_back({t.id, t.user_id, FormatTimestamp(t.created_at), t.text,
                      t.source, t.is_retweet ? 1 : 0, t.retweet_count,
                      t.geo ? 1 : 0, t.num_hashtags, t.num_mentions, t.num_urls,
                      t.favorite_count});
    };
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      for (const Tweet& t : dataset.timeline(i)) add(t);
    }
    for (const Tweet& t : dataset.orphan_tweets()) add(t);
    const fs::path p = dir / ("tweets" + ext);
    WriteRows(p, format,
              {"id", "user_id", "created_at", "text", "source", "is_retweet",
               "retweet_count", "geo", "num_hashtags", "num_mentions",
               "num_urls", "favorite_count"},
              rows);
    written.push_back(p);
  }
  if (dataset.has_graph()) {
    std::vector<std::vector<json>> rows;
    rows.reserve(dataset.graph().edges().size());
    for (const Edge& e : dataset.graph().edges()) {
      rows.push_back({e.follower, e.followed});
    }
    const fs::path p = dir / ("edges" + ext);
    WriteRows(p, format, {"follower_id", "followed_id"}, rows);
    written.push_back(p);
    if (!dataset.graph().neighbors().empty()) {
      std::vector<std::vector<json>> nrows;
      for (const auto& [id, n] : dataset.graph().neighbors()) {
        nrows.push_back({id, n.followers_count, n.statuses_count});
      }
      const fs::path np = dir / ("neighbors" + ext);
      WriteRows(np, format, {"id", "followers_count", "statuses_count"}, nrows);
      written.push_back(np);
    }
  }
  {
    json meta = {{"format_version", kMetaVersion},
                 {"provenance", dataset.provenance()},
                 {"reference_time", FormatTimestamp(dataset.reference_time())},
                 {"has_timelines", dataset.has_timelines()},
                 {"has_graph", dataset.has_graph()}};
    const fs::path p = dir / "corpus.json";
    std::ofstream out = OpenForWrite(p);
    out << meta.dump(2) << '\n';
    written.push_back(p);
  }
  return written;
}

}  // namespace fakescope::corpus
