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

// Tabular ingest: CSV loading with categorical encodings, declarative
// two-way subgroup splits and ground-truth fitting.

#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "infodisc/agent.hpp"
#include "infodisc/linalg.hpp"

namespace infodisc {

/// How a raw cell becomes a real number: parsed as-is, or looked up in an
/// explicit category -> value table (ordered categories carry their rank).
class ColumnEncoding {
 public:
  static ColumnEncoding passthrough();
  static ColumnEncoding ordinal(std::vector<std::pair<std::string, double>> mapping);
  /// Categories in rank order, mapped to 1, 2, ..., n.
  static ColumnEncoding ordinal_sequence(const std::vector<std::string>& ordered);

  bool is_passthrough() const noexcept { return mapping_.empty(); }
  const std::vector<std::pair<std::string, double>>& mapping() const noexcept { return mapping_; }

  /// Throws kUnmappedCategory for an unknown category, kParseError for a
  /// non-numeric passthrough value.
  double encode(std::string_view raw) const;

  /// Inverse of encode for ordinal columns; passthrough values print as numbers.
  std::string decode(double value) const;

 private:
  std::vector<std::pair<std::string, double>> mapping_;
};

struct EncodingManifest {
  std::map<std::string, ColumnEncoding> columns;

  /// Passthrough for columns without an entry.
  const ColumnEncoding& encoding_for(const std::string& column) const;
};

struct LoadOptions {
  /// Feature columns in order; empty means every column not excluded.
  std::vector<std::string> feature_columns;
  std::vector<std::string> exclude_columns;
  /// Non-feature columns that must be present and non-missing (grouping keys, labels).
  std::vector<std::string> required_columns;
  std::vector<std::string> missing_values{"", "?", "NA"};
  /// When set, the file has no header row and these name its columns.
  std::vector<std::string> column_names;
  /// Per-feature z-scoring; changes the induced subspaces.
  bool standardize = false;
};

/// An encoded table. Rows with missing cells in any used column are dropped.
struct Dataset {
  std::vector<std::string> column_names;
  std::vector<std::string> feature_names;
  Matrix features;
  /// Trimmed raw cells of the kept rows, aligned with `features`.
  std::vector<std::vector<std::string>> raw_rows;
  EncodingManifest manifest;
  std::size_t dropped_missing = 0;
  bool standardized = false;
  Vector feature_means;
  Vector feature_scales;

  std::size_t rows() const noexcept { return raw_rows.size(); }
  /// Throws kMissingColumn.
  std::size_t column_index(std::string_view name) const;
  /// Encoded value of any column cell (manifest lookup or numeric parse).
  double numeric_value(std::size_t row, std::size_t column) const;
  /// Encoded values of one column over all kept rows.
  Vector column_values(std::string_view name) const;
};

Dataset load_csv(const std::filesystem::path& path, const EncodingManifest& manifest,
                 const LoadOptions& options = {});
Dataset load_csv(std::istream& in, const EncodingManifest& manifest,
                 const LoadOptions& options = {});

enum class Comparator { kEq, kNe, kLt, kLe, kGt, kGe, kIn, kNotIn };

std::optional<Comparator> parse_comparator(std::string_view text);

using ClauseValue = std::variant<double, std::string>;

/// column <op> value(s). String values compare raw cells; numbers compare
/// encoded values.
struct Clause {
  std::string column;
  Comparator op = Comparator::kEq;
  std::vector<ClauseValue> values;
};

/// Conjunction of clauses, or the catch-all "every row not in the other group".
struct GroupPredicate {
  std::vector<Clause> all_of;
  bool otherwise = false;
};

/// Rows matching group1 go to G1 (first match wins), else rows matching
/// group2 go to G2, else the row is excluded.
struct GroupingSpec {
  std::string name;
  GroupPredicate group1;
  GroupPredicate group2;

  /// Columns the predicates read.
  std::vector<std::string> referenced_columns() const;
};

enum class Membership { kFirst, kSecond, kExcluded };

Membership assign_row(const Dataset& ds, const GroupingSpec& spec, std::size_t row);

struct GroupSplit {
  Matrix group1;
  Matrix group2;
  std::size_t excluded = 0;
};

/// Throws kEmptyGroup when either side receives no rows.
GroupSplit split_groups(const Dataset& ds, const GroupingSpec& spec);

/// Minimum-norm least-squares fit of y on X.
ScoringRule fit_ground_truth(const Eigen::Ref<const Matrix>& x, const Eigen::Ref<const Vector>& y);

}  // namespace infodisc
