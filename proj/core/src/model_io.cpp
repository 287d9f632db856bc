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

#include "infodisc/model_io.hpp"

#include <fstream>
#include <sstream>

#include "infodisc/error.hpp"
#include "json_util.hpp"

namespace infodisc {

namespace {

using detail::json;

constexpr ErrorCode kInvalid = ErrorCode::kModelValidation;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(kInvalid, path + ": " + what);
}

// Re-raises construction errors from the domain types with the field path.
template <typename F>
auto with_path(const std::string& path, F&& make) {
  try {
    return make();
  } catch (const Error& e) {
    if (e.code() == kInvalid) throw;
    fail(path, e.what());
  }
}

SubgroupSpec parse_group(const json& doc, GroupId id, std::size_t dim, std::size_t rank) {
  const std::string n = std::to_string(static_cast<int>(id));
  const std::string a_key = "A" + n;
  const std::string pi_key = "Pi" + n;
  const std::string data_key = "data" + n;

  CostMatrix cost = CostMatrix::identity(dim);
  if (doc.contains(a_key)) {
    Matrix a = detail::matrix_from_json(doc[a_key], a_key, kInvalid);
    if (static_cast<std::size_t>(a.rows()) != dim || static_cast<std::size_t>(a.cols()) != dim) {
      fail(a_key, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    }
    cost = with_path(a_key, [&] { return CostMatrix(std::move(a)); });
  }

  const bool has_pi = doc.contains(pi_key);
  const bool has_data = doc.contains(data_key);
  if (has_pi == has_data) fail(pi_key, "give exactly one of '" + pi_key + "' or '" + data_key + "'");

  if (has_pi) {
    Matrix pi = detail::matrix_from_json(doc[pi_key], pi_key, kInvalid);
    if (static_cast<std::size_t>(pi.rows()) != dim || static_cast<std::size_t>(pi.cols()) != dim) {
      fail(pi_key, "expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    }
    ProjectionMatrix p = with_path(pi_key, [&] { return ProjectionMatrix(std::move(pi)); });
    return SubgroupSpec(id, std::move(cost), std::move(p));
  }
  Matrix data = detail::matrix_from_json(doc[data_key], data_key, kInvalid);
  if (static_cast<std::size_t>(data.cols()) != dim) {
    fail(data_key, "rows must have " + std::to_string(dim) + " entries");
  }
  return with_path(data_key, [&] {
    return SubgroupSpec::from_data(id, std::move(cost), std::move(data), rank);
  });
}

}  // namespace

PopulationModel parse_model(std::string_view json_text, std::size_t default_rank) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail("model", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("model", "expected a JSON object");
  if (doc.contains("schema_version") &&
      (!doc["schema_version"].is_number_integer() || doc["schema_version"].get<int>() != kModelSchemaVersion)) {
    fail("schema_version", "unsupported (expected " + std::to_string(kModelSchemaVersion) + ")");
  }
  if (!doc.contains("w_star")) fail("w_star", "required");
  Vector w_star = detail::vector_from_json(doc["w_star"], "w_star", kInvalid);
  const auto dim = static_cast<std::size_t>(w_star.size());
  if (doc.contains("dim")) {
    if (!doc["dim"].is_number_unsigned() || doc["dim"].get<std::size_t>() != dim) {
      fail("dim", "does not match the length of w_star");
    }
  }
  std::size_t rank = default_rank;
  if (doc.contains("rank")) {
    if (!doc["rank"].is_number_unsigned() || doc["rank"].get<std::size_t>() == 0) {
      fail("rank", "expected a positive integer");
    }
    rank = doc["rank"].get<std::size_t>();
  }
  std::array<double, 2> weights{1.0, 1.0};
  if (doc.contains("group_weights")) {
    Vector w = detail::vector_from_json(doc["group_weights"], "group_weights", kInvalid);
    if (w.size() != 2) fail("group_weights", "expected two weights");
    weights = {w(0), w(1)};
  }

  ScoringRule truth = with_path("w_star", [&] { return ScoringRule(std::move(w_star)); });
  SubgroupSpec g1 = parse_group(doc, GroupId::kFirst, dim, rank);
  SubgroupSpec g2 = parse_group(doc, GroupId::kSecond, dim, rank);
  return with_path("group_weights", [&] {
    return PopulationModel(std::move(truth), std::move(g1), std::move(g2), weights);
  });
}

PopulationModel load_model(const std::filesystem::path& path, std::size_t default_rank) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str(), default_rank);
}

std::string write_model(const PopulationModel& model) {
  json doc;
  doc["schema_version"] = kModelSchemaVersion;
  doc["dim"] = model.dim();
  doc["w_star"] = detail::vector_json(model.ground_truth().weights());
  doc["A1"] = detail::matrix_json(model.group1().cost().matrix());
  doc["A2"] = detail::matrix_json(model.group2().cost().matrix());
  doc["Pi1"] = detail::matrix_json(model.group1().projection().matrix());
  doc["Pi2"] = detail::matrix_json(model.group2().projection().matrix());
  if (model.is_weighted()) {
    doc["group_weights"] = {model.group_weights()[0], model.group_weights()[1]};
  }
  return doc.dump(2) + "\n";
}

}  // namespace infodisc
