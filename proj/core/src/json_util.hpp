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

// JSON conversions shared by model and config parsing. Not installed.

#include <string>

#include <nlohmann/json.hpp>

#include "infodisc/error.hpp"
#include "infodisc/linalg.hpp"

namespace infodisc::detail {

using nlohmann::json;

inline json vector_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

inline json matrix_json(const Matrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

inline double number_at(const json& j, const std::string& path, ErrorCode code) {
  if (!j.is_number()) throw Error(code, path + ": expected a number");
  return j.get<double>();
}

inline Vector vector_from_json(const json& j, const std::string& path, ErrorCode code) {
  if (!j.is_array() || j.empty()) throw Error(code, path + ": expected a non-empty array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = number_at(j[i], path + "[" + std::to_string(i) + "]", code);
  }
  return v;
}

inline Matrix matrix_from_json(const json& j, const std::string& path, ErrorCode code) {
  if (!j.is_array() || j.empty()) throw Error(code, path + ": expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw Error(code, path + "[0]: expected a non-empty row");
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string row_path = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != cols) {
      throw Error(code, row_path + ": expected a row of " + std::to_string(cols) + " numbers");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          number_at(j[i][k], row_path + "[" + std::to_string(k) + "]", code);
    }
  }
  return m;
}

}  // namespace infodisc::detail
