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

#include "fakescope/csv.h"

#include <iterator>

#include "fakescope/common.h"

namespace fakescope {

std::vector<CsvRow> ReadCsv(std::istream& in, std::string_view source) {
  const std::string data((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  std::vector<CsvRow> rows;
  CsvRow row;
  std::string field;
  std::size_t line = 1;
  row.line = 1;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t quote_line = 0;

  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    // A lone empty field is a blank line.
    if (!(row.fields.size() == 1 && row.fields[0].empty())) {
      rows.push_back(std::move(row));
    }
    row = CsvRow{};
    row.line = line;
  };

  for (std::size_t i = 0; i < data.size(); ++i) {
    const char c = data[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < data.size() && data[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field_started && field.empty()) {
          in_quotes = true;
          field_started = true;
          quote_line = line;
        } else {
          field += c;
        }
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        ++line;
        end_row();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) {
    throw DataError(std::string(source) + ":" + std::to_string(quote_line) +
                    ": unterminated quoted field");
  }
  if (!field.empty() || !row.fields.empty()) end_row();
  return rows;
}

CsvTable::CsvTable(std::vector<CsvRow> rows, std::string source)
    : source_(std::move(source)) {
  if (rows.empty()) {
    throw DataError(source_ + ": missing header row");
  }
  header_ = rows.front().fields;
  for (std::size_t i = 0; i < header_.size(); ++i) {
    index_.emplace(Trim(header_[i]), i);
  }
  records_.assign(std::make_move_iterator(rows.begin() + 1),
                  std::make_move_iterator(rows.end()));
  for (const auto& r : records_) {
    if (r.fields.size() != header_.size()) {
      throw DataError(source_ + ":" + std::to_string(r.line) + ": expected " +
                      std::to_string(header_.size()) + " fields, found " +
                      std::to_string(r.fields.size()));
    }
  }
}

bool CsvTable::has_column(std::string_view name) const {
  return index_.find(name) != index_.end();
}

std::size_t CsvTable::column(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) {
    throw DataError(source_ + ": missing required column '" +
                    std::string(name) + "'");
  }
  return it->second;
}

std::string CsvEscape(std::string_view field) {
  bool needs_quotes = false;
  for (const char c : field) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') needs_quotes = true;
  }
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (const char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << CsvEscape(fields[i]);
  }
  out << '\n';
}

}  // namespace fakescope
