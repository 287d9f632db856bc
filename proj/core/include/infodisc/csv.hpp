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

#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace infodisc {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 reader: quoted fields may hold delimiters, line breaks and
/// doubled quotes; CRLF and LF endings are accepted; blank lines are skipped.
/// Every record must have as many fields as the header.
CsvTable parse_csv(std::istream& in, bool has_header = true, char delimiter = ',');

CsvTable read_csv_file(const std::filesystem::path& path, bool has_header = true,
                       char delimiter = ',');

}  // namespace infodisc
