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

#include "infodisc/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "infodisc/csv.hpp"
#include "infodisc/error.hpp"

namespace infodisc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

ColumnEncoding ColumnEncoding::passthrough() { return ColumnEncoding{}; }

ColumnEncoding ColumnEncoding::ordinal(std::vector<std::pair<std::string, double>> mapping) {
  if (mapping.empty()) {
    throw Error(ErrorCode::kConfigError, "ordinal encoding needs at least one category");
  }
  std::set<std::string> seen;
  for (auto& [category, value] : mapping) {
    category = std::string(trim(category));
    if (!seen.insert(category).second) {
      throw Error(ErrorCode::kConfigError, "ordinal encoding repeats category '" + category + "'");
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::kConfigError, "ordinal encoding value for '" + category + "' is not finite");
    }
  }
  ColumnEncoding out;
  out.mapping_ = std::move(mapping);
  return out;
}

ColumnEncoding ColumnEncoding::ordinal_sequence(const std::vector<std::string>& ordered) {
  std::vector<std::pair<std::string, double>> mapping;
  mapping.reserve(ordered.size());
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    mapping.emplace_back(ordered[i], static_cast<double>(i + 1));
  }
  return ordinal(std::move(mapping));
}

double ColumnEncoding::encode(std::string_view raw) const {
  const std::string_view cell = trim(raw);
  if (is_passthrough()) {
    if (auto v = parse_number(cell)) return *v;
    throw Error(ErrorCode::kParseError, "not a number: '" + std::string(cell) + "'");
  }
  for (const auto& [category, value] : mapping_) {
    if (category == cell) return value;
  }
  throw Error(ErrorCode::kUnmappedCategory, "unmapped category '" + std::string(cell) + "'");
}

std::string ColumnEncoding::decode(double value) const {
  if (is_passthrough()) return format_number(value);
  for (const auto& [category, v] : mapping_) {
    if (v == value) return category;
  }
  throw Error(ErrorCode::kUnmappedCategory, "no category encodes to " + format_number(value));
}

const ColumnEncoding& EncodingManifest::encoding_for(const std::string& column) const {
  static const ColumnEncoding kPassthrough = ColumnEncoding::passthrough();
  const auto it = columns.find(column);
  return it == columns.end() ? kPassthrough : it->second;
}

std::size_t Dataset::column_index(std::string_view name) const {
  const auto it = std::find(column_names.begin(), column_names.end(), name);
  if (it == column_names.end()) {
    throw Error(ErrorCode::kMissingColumn, "missing column '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - column_names.begin());
}

double Dataset::numeric_value(std::size_t row, std::size_t column) const {
  const std::string& name = column_names.at(column);
  try {
    return manifest.encoding_for(name).encode(raw_rows.at(row).at(column));
  } catch (const Error& e) {
    std::ostringstream msg;
    msg << e.what() << " (row " << row + 1 << ", column '" << name << "')";
    throw Error(e.code(), msg.str());
  }
}

Vector Dataset::column_values(std::string_view name) const {
  const std::size_t col = column_index(name);
  Vector out(static_cast<Eigen::Index>(rows()));
  for (std::size_t r = 0; r < rows(); ++r) out(static_cast<Eigen::Index>(r)) = numeric_value(r, col);
  return out;
}

Dataset load_csv(const std::filesystem::path& path, const EncodingManifest& manifest,
                 const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return load_csv(in, manifest, options);
}

Dataset load_csv(std::istream& in, const EncodingManifest& manifest, const LoadOptions& options) {
  const bool has_header = options.column_names.empty();
  CsvTable table = parse_csv(in, has_header);

  Dataset ds;
  ds.manifest = manifest;
  for (const auto& name : has_header ? table.header : options.column_names) {
    ds.column_names.emplace_back(trim(name));
  }
  if (!has_header && !table.rows.empty() && table.rows.front().size() != ds.column_names.size()) {
    std::ostringstream msg;
    msg << "csv has " << table.rows.front().size() << " columns but " << ds.column_names.size()
        << " names were supplied";
    throw Error(ErrorCode::kParseError, msg.str());
  }

  for (const auto& name : options.exclude_columns) ds.column_index(name);
  for (const auto& name : options.required_columns) ds.column_index(name);
  for (const auto& [name, encoding] : manifest.columns) {
    (void)encoding;
    ds.column_index(name);
  }

  if (options.feature_columns.empty()) {
    for (const auto& name : ds.column_names) {
      if (!contains(options.exclude_columns, name)) ds.feature_names.push_back(name);
    }
  } else {
    for (const auto& name : options.feature_columns) {
      ds.column_index(name);
      if (!contains(options.exclude_columns, name)) ds.feature_names.push_back(name);
    }
  }
  if (ds.feature_names.empty()) {
    throw Error(ErrorCode::kConfigError, "no feature columns selected");
  }

  std::vector<std::size_t> feature_idx;
  for (const auto& name : ds.feature_names) feature_idx.push_back(ds.column_index(name));
  std::vector<std::size_t> used = feature_idx;
  for (const auto& name : options.required_columns) used.push_back(ds.column_index(name));

  const auto is_missing = [&](std::string_view cell) {
    return std::find(options.missing_values.begin(), options.missing_values.end(), cell) !=
           options.missing_values.end();
  };

  std::vector<std::vector<double>> encoded;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<std::string> cells;
    cells.reserve(table.rows[r].size());
    for (const auto& cell : table.rows[r]) cells.emplace_back(trim(cell));

    if (std::any_of(used.begin(), used.end(), [&](std::size_t c) { return is_missing(cells[c]); })) {
      ++ds.dropped_missing;
      continue;
    }
    std::vector<double> values;
    values.reserve(feature_idx.size());
    for (std::size_t c : feature_idx) {
      const std::string& name = ds.column_names[c];
      try {
        values.push_back(manifest.encoding_for(name).encode(cells[c]));
      } catch (const Error& e) {
        std::ostringstream msg;
        msg << e.what() << " (data row " << r + 1 << ", column '" << name << "')";
        throw Error(e.code(), msg.str());
      }
    }
    encoded.push_back(std::move(values));
    ds.raw_rows.push_back(std::move(cells));
  }

  const auto n = static_cast<Eigen::Index>(encoded.size());
  const auto d = static_cast<Eigen::Index>(feature_idx.size());
  ds.features.resize(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) ds.features(i, j) = encoded[i][j];
  }

  if (options.standardize && n > 0) {
    ds.standardized = true;
    ds.feature_means = ds.features.colwise().mean().transpose();
    ds.feature_scales.resize(d);
    for (Eigen::Index j = 0; j < d; ++j) {
      const double var = (ds.features.col(j).array() - ds.feature_means(j)).square().mean();
      const double sd = std::sqrt(var);
      ds.feature_scales(j) = sd > 0.0 ? sd : 1.0;
      ds.features.col(j) = (ds.features.col(j).array() - ds.feature_means(j)) / ds.feature_scales(j);
    }
  }
  return ds;
}

std::optional<Comparator> parse_comparator(std::string_view text) {
  static const std::pair<std::string_view, Comparator> kNames[] = {
      {"eq", Comparator::kEq},   {"==", Comparator::kEq},        {"ne", Comparator::kNe},
      {"!=", Comparator::kNe},   {"lt", Comparator::kLt},        {"<", Comparator::kLt},
      {"le", Comparator::kLe},   {"<=", Comparator::kLe},        {"gt", Comparator::kGt},
      {">", Comparator::kGt},    {"ge", Comparator::kGe},        {">=", Comparator::kGe},
      {"in", Comparator::kIn},   {"not_in", Comparator::kNotIn},
  };
  for (const auto& [name, op] : kNames) {
    if (name == text) return op;
  }
  return std::nullopt;
}

std::vector<std::string> GroupingSpec::referenced_columns() const {
  std::vector<std::string> out;
  for (const GroupPredicate* p : {&group1, &group2}) {
    for (const auto& clause : p->all_of) {
      if (!contains(out, clause.column)) out.push_back(clause.column);
    }
  }
  return out;
}

namespace {

bool is_ordering(Comparator op) {
  return op == Comparator::kLt || op == Comparator::kLe || op == Comparator::kGt ||
         op == Comparator::kGe;
}

void validate(const Dataset& ds, const GroupingSpec& spec) {
  if (spec.group1.otherwise && spec.group2.otherwise) {
    throw Error(ErrorCode::kConfigError, "grouping '" + spec.name + "': both groups are 'otherwise'");
  }
  for (const GroupPredicate* p : {&spec.group1, &spec.group2}) {
    if (!p->otherwise && p->all_of.empty()) {
      throw Error(ErrorCode::kConfigError, "grouping '" + spec.name + "': empty predicate");
    }
    for (const auto& clause : p->all_of) {
      ds.column_index(clause.column);
      if (clause.values.empty()) {
        throw Error(ErrorCode::kConfigError,
                    "grouping '" + spec.name + "': clause on '" + clause.column + "' has no value");
      }
      if (is_ordering(clause.op) &&
          (clause.values.size() != 1 || !std::holds_alternative<double>(clause.values[0]))) {
        throw Error(ErrorCode::kConfigError, "grouping '" + spec.name + "': ordering clause on '" +
                                                 clause.column + "' needs one numeric value");
      }
    }
  }
}

bool value_matches(const Dataset& ds, std::size_t row, std::size_t col, const ClauseValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return ds.raw_rows[row][col] == *s;
  return ds.numeric_value(row, col) == std::get<double>(v);
}

bool clause_matches(const Dataset& ds, std::size_t row, const Clause& clause) {
  const std::size_t col = ds.column_index(clause.column);
  const auto any = [&] {
    return std::any_of(clause.values.begin(), clause.values.end(),
                       [&](const ClauseValue& v) { return value_matches(ds, row, col, v); });
  };
  switch (clause.op) {
    case Comparator::kEq:
    case Comparator::kIn: return any();
    case Comparator::kNe:
    case Comparator::kNotIn: return !any();
    default: break;
  }
  const double x = ds.numeric_value(row, col);
  const double v = std::get<double>(clause.values[0]);
  switch (clause.op) {
    case Comparator::kLt: return x < v;
    case Comparator::kLe: return x <= v;
    case Comparator::kGt: return x > v;
    case Comparator::kGe: return x >= v;
    default: return false;
  }
}

bool predicate_matches(const Dataset& ds, std::size_t row, const GroupPredicate& p) {
  return std::all_of(p.all_of.begin(), p.all_of.end(),
                     [&](const Clause& c) { return clause_matches(ds, row, c); });
}

}  // namespace

Membership assign_row(const Dataset& ds, const GroupingSpec& spec, std::size_t row) {
  if (spec.group1.otherwise) {
    return predicate_matches(ds, row, spec.group2) ? Membership::kSecond : Membership::kFirst;
  }
  if (predicate_matches(ds, row, spec.group1)) return Membership::kFirst;
  if (spec.group2.otherwise || predicate_matches(ds, row, spec.group2)) return Membership::kSecond;
  return Membership::kExcluded;
}

GroupSplit split_groups(const Dataset& ds, const GroupingSpec& spec) {
  validate(ds, spec);
  std::vector<Eigen::Index> first;
  std::vector<Eigen::Index> second;
  GroupSplit out;
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    switch (assign_row(ds, spec, r)) {
      case Membership::kFirst: first.push_back(static_cast<Eigen::Index>(r)); break;
      case Membership::kSecond: second.push_back(static_cast<Eigen::Index>(r)); break;
      case Membership::kExcluded: ++out.excluded; break;
    }
  }
  if (first.empty() || second.empty()) {
    throw Error(ErrorCode::kEmptyGroup, "grouping '" + spec.name + "': " +
                                            (first.empty() ? "G1" : "G2") + " received no rows");
  }
  out.group1 = ds.features(first, Eigen::all);
  out.group2 = ds.features(second, Eigen::all);
  return out;
}

ScoringRule fit_ground_truth(const Eigen::Ref<const Matrix>& x, const Eigen::Ref<const Vector>& y) {
  return ScoringRule(min_norm_least_squares(x, y));
}

}  // namespace infodisc
