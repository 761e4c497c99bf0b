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

// RFC 4180 CSV: quoted fields may contain separators, doubled quotes and
// line breaks. Output always uses "\n" line endings.

#ifndef FAKESCOPE_CSV_H_
#define FAKESCOPE_CSV_H_

#include <cstddef>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace fakescope {

struct CsvRow {
  std::size_t line = 0;  // 1-based line the record starts on
  std::vector<std::string> fields;
};

// Parses the whole stream. Throws DataError("<source>:<line>: ...") on an
// unterminated quote.
std::vector<CsvRow> ReadCsv(std::istream& in, std::string_view source);

// Header-indexed view used by the loaders.
class CsvTable {
 public:
  CsvTable(std::vector<CsvRow> rows, std::string source);

  const std::string& source() const { return source_; }
  std::size_t size() const { return records_.size(); }
  const CsvRow& record(std::size_t i) const { return records_[i]; }

  bool has_column(std::string_view name) const;
  // Throws DataError naming the file when the column is missing.
  std::size_t column(std::string_view name) const;

 private:
  std::string source_;
  std::vector<std::string> header_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<CsvRow> records_;
};

std::string CsvEscape(std::string_view field);
void WriteCsvRow(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace fakescope

#endif  // FAKESCOPE_CSV_H_
