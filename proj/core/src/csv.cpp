// Copyright 2026 The infodisc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "infodisc/csv.hpp"

#include <fstream>
#include <sstream>

#include "infodisc/error.hpp"

namespace infodisc {

namespace {

// Reads one record; returns false at end of input.
bool read_record(std::istream& in, char delimiter, std::vector<std::string>& fields,
                 std::size_t& line) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  const std::size_t start_line = line;

  for (int ch = in.get(); ch != EOF; ch = in.get()) {
    any = true;
    const char c = static_cast<char>(ch);
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          field.push_back('"');
          in.get();
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
    } else if (c == delimiter) {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\r') {
      if (in.peek() == '\n') in.get();
      ++line;
      fields.push_back(std::move(field));
      return true;
    } else if (c == '\n') {
      ++line;
      fields.push_back(std::move(field));
      return true;
    } else {
      field.push_back(c);
    }
  }
  if (in_quotes) {
    std::ostringstream msg;
    msg << "csv: unterminated quoted field starting on line " << start_line;
    throw Error(ErrorCode::kParseError, msg.str());
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

bool is_blank(const std::vector<std::string>& fields) {
  return fields.size() == 1 && fields[0].find_first_not_of(" \t") == std::string::npos;
}

}  // namespace

CsvTable parse_csv(std::istream& in, bool has_header, char delimiter) {
  CsvTable table;
  std::vector<std::string> fields;
  std::size_t line = 1;
  std::size_t width = 0;
  bool first = true;

  while (true) {
    const std::size_t record_line = line;
    if (!read_record(in, delimiter, fields, line)) break;
    if (is_blank(fields)) continue;
    if (first) {
      if (fields[0].rfind("\xEF\xBB\xBF", 0) == 0) fields[0].erase(0, 3);  // UTF-8 BOM
      width = fields.size();
      first = false;
      if (has_header) {
        table.header = fields;
        continue;
      }
    }
    if (fields.size() != width) {
      std::ostringstream msg;
      msg << "csv: line " << record_line << " has " << fields.size() << " fields, expected "
          << width;
      throw Error(ErrorCode::kParseError, msg.str());
    }
    table.rows.push_back(fields);
  }
  if (has_header && table.header.empty()) {
    throw Error(ErrorCode::kParseError, "csv: missing header row");
  }
  return table;
}

CsvTable read_csv_file(const std::filesystem::path& path, bool has_header, char delimiter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  }
  return parse_csv(in, has_header, delimiter);
}

}  // namespace infodisc
