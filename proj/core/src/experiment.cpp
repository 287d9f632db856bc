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

#include "infodisc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <fstream>
#include <future>
#include <set>
#include <sstream>
#include <thread>

#include "infodisc/model_io.hpp"
#include "json_util.hpp"

namespace infodisc {

namespace {

using detail::json;

constexpr ErrorCode kConfig = ErrorCode::kConfigError;

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  throw Error(kConfig, path + ": " + what);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::vector<std::string> string_list(const json& j, const std::string& path) {
  if (!j.is_array()) config_error(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) config_error(path + "[" + std::to_string(i) + "]", "expected a string");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

std::size_t positive_int(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() || j.get<std::size_t>() == 0) {
    config_error(path, "expected a positive integer");
  }
  return j.get<std::size_t>();
}

Vector parse_number_list(const std::string& text, const std::string& origin) {
  // JSON array, or numbers separated by whitespace and/or commas
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      config_error(origin, std::string("invalid JSON: ") + e.what());
    }
    return detail::vector_from_json(j, origin, kConfig);
  }
  std::vector<double> values;
  std::string token;
  std::istringstream in(text);
  while (in >> token) {
    std::stringstream parts(token);
    std::string piece;
    while (std::getline(parts, piece, ',')) {
      if (piece.empty()) continue;
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
      if (ec != std::errc() || ptr != piece.data() + piece.size()) {
        config_error(origin, "not a number: '" + piece + "'");
      }
      values.push_back(v);
    }
  }
  if (values.empty()) config_error(origin, "no numbers found");
  return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

ColumnEncoding parse_encoding(const json& j, const std::string& path) {
  if (j.is_string() && j.get<std::string>() == "passthrough") return ColumnEncoding::passthrough();
  if (!j.is_object() || !j.contains("ordinal")) {
    config_error(path, "expected \"passthrough\" or {\"ordinal\": ...}");
  }
  const json& ord = j["ordinal"];
  if (ord.is_array()) return ColumnEncoding::ordinal_sequence(string_list(ord, path + ".ordinal"));
  if (ord.is_object()) {
    std::vector<std::pair<std::string, double>> mapping;
    for (const auto& [category, value] : ord.items()) {
      mapping.emplace_back(category,
                           detail::number_at(value, path + ".ordinal." + category, kConfig));
    }
    return ColumnEncoding::ordinal(std::move(mapping));
  }
  config_error(path + ".ordinal", "expected an ordered list or a category -> value object");
}

DatasetConfig parse_dataset(const json& j, const std::filesystem::path& base) {
  if (!j.is_object()) config_error("dataset", "expected an object");
  if (!j.contains("path") || !j["path"].is_string()) config_error("dataset.path", "required string");
  DatasetConfig out;
  out.display_path = j["path"].get<std::string>();
  out.path = resolve(base, out.display_path);
  if (j.contains("features")) out.options.feature_columns = string_list(j["features"], "dataset.features");
  if (j.contains("exclude")) out.options.exclude_columns = string_list(j["exclude"], "dataset.exclude");
  if (j.contains("missing_values")) {
    out.options.missing_values = string_list(j["missing_values"], "dataset.missing_values");
  }
  if (j.contains("column_names")) {
    out.options.column_names = string_list(j["column_names"], "dataset.column_names");
  }
  if (j.contains("standardize")) {
    if (!j["standardize"].is_boolean()) config_error("dataset.standardize", "expected a boolean");
    out.options.standardize = j["standardize"].get<bool>();
  }
  if (j.contains("encoding")) {
    if (!j["encoding"].is_object()) config_error("dataset.encoding", "expected an object");
    for (const auto& [column, enc] : j["encoding"].items()) {
      out.manifest.columns.emplace(column, parse_encoding(enc, "dataset.encoding." + column));
    }
  }
  return out;
}

Clause parse_clause(const json& j, const std::string& path) {
  if (!j.is_object()) config_error(path, "expected an object");
  Clause c;
  if (!j.contains("column") || !j["column"].is_string()) config_error(path + ".column", "required string");
  c.column = j["column"].get<std::string>();
  const std::string op = j.value("op", std::string("eq"));
  const auto parsed = parse_comparator(op);
  if (!parsed) config_error(path + ".op", "unknown comparator '" + op + "'");
  c.op = *parsed;

  const auto add_value = [&](const json& v, const std::string& vpath) {
    if (v.is_number()) {
      c.values.emplace_back(v.get<double>());
    } else if (v.is_string()) {
      c.values.emplace_back(v.get<std::string>());
    } else {
      config_error(vpath, "expected a number or string");
    }
  };
  if (j.contains("values")) {
    if (!j["values"].is_array()) config_error(path + ".values", "expected an array");
    for (std::size_t i = 0; i < j["values"].size(); ++i) {
      add_value(j["values"][i], path + ".values[" + std::to_string(i) + "]");
    }
  } else if (j.contains("value")) {
    add_value(j["value"], path + ".value");
  } else {
    config_error(path, "needs \"value\" or \"values\"");
  }
  return c;
}

GroupPredicate parse_predicate(const json& j, const std::string& path) {
  GroupPredicate p;
  if (j.is_string() && j.get<std::string>() == "otherwise") {
    p.otherwise = true;
    return p;
  }
  if (!j.is_object()) config_error(path, "expected an object or \"otherwise\"");
  if (j.value("otherwise", false)) {
    p.otherwise = true;
    return p;
  }
  if (!j.contains("all") || !j["all"].is_array() || j["all"].empty()) {
    config_error(path + ".all", "expected a non-empty array of clauses");
  }
  for (std::size_t i = 0; i < j["all"].size(); ++i) {
    p.all_of.push_back(parse_clause(j["all"][i], path + ".all[" + std::to_string(i) + "]"));
  }
  return p;
}

CostSpec parse_cost(const json& j, const std::string& path) {
  CostSpec c;
  if (j.is_string()) {
    if (j.get<std::string>() != "identity") config_error(path, "expected \"identity\"");
    return c;
  }
  if (j.is_object()) {
    if (!j.contains("scale")) config_error(path, "expected {\"scale\": a}");
    c.scale = detail::number_at(j["scale"], path + ".scale", kConfig);
    if (!(c.scale > 0.0)) config_error(path + ".scale", "must be positive");
    return c;
  }
  c.matrix = detail::matrix_from_json(j, path, kConfig);
  return c;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

}  // namespace

CostMatrix CostSpec::realize(std::size_t dim) const {
  if (matrix) {
    if (static_cast<std::size_t>(matrix->rows()) != dim ||
        static_cast<std::size_t>(matrix->cols()) != dim) {
      throw Error(kConfig, "cost matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    return CostMatrix(*matrix);
  }
  return CostMatrix::scaled_identity(dim, scale);
}

WstarSource parse_wstar(std::string_view spec, const std::filesystem::path& base_dir) {
  WstarSource out;
  out.description = std::string(spec);
  if (spec == "ones") return out;
  if (spec.rfind("fit:", 0) == 0 && spec.size() > 4) {
    out.kind = WstarKind::kFit;
    out.column = std::string(spec.substr(4));
    return out;
  }
  if (spec.rfind("vector:", 0) == 0 && spec.size() > 7) {
    out.kind = WstarKind::kVector;
    const std::string file(spec.substr(7));
    out.vector = parse_number_list(read_text(resolve(base_dir, file)), "wstar " + file);
    return out;
  }
  throw Error(kConfig, "wstar: expected ones | fit:COLUMN | vector:FILE, got '" + std::string(spec) + "'");
}

ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    config_error("config", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) config_error("config", "expected a JSON object");

  static const std::set<std::string> kKeys = {"schema_version", "dataset", "groupings", "rank",
                                              "costs", "wstar", "alignment", "group_weights",
                                              "output", "threads", "description"};
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!kKeys.count(key)) config_error(key, "unknown key");
  }

  ExperimentConfig cfg;
  if (doc.contains("rank")) cfg.rank = positive_int(doc["rank"], "rank");
  if (doc.contains("threads")) {
    if (!doc["threads"].is_number_unsigned()) config_error("threads", "expected a non-negative integer");
    cfg.threads = doc["threads"].get<std::size_t>();
  }
  if (doc.contains("dataset")) cfg.dataset = parse_dataset(doc["dataset"], base_dir);

  if (doc.contains("wstar")) {
    const json& w = doc["wstar"];
    if (w.is_string()) {
      cfg.wstar = parse_wstar(w.get<std::string>(), base_dir);
    } else if (w.is_array()) {
      cfg.wstar.kind = WstarKind::kVector;
      cfg.wstar.vector = detail::vector_from_json(w, "wstar", kConfig);
      cfg.wstar.description = "vector";
    } else {
      config_error("wstar", "expected a string or an array of numbers");
    }
  }

  if (doc.contains("costs")) {
    const json& c = doc["costs"];
    if (!c.is_object()) config_error("costs", "expected an object");
    if (c.contains("group1")) cfg.costs[0] = parse_cost(c["group1"], "costs.group1");
    if (c.contains("group2")) cfg.costs[1] = parse_cost(c["group2"], "costs.group2");
  }

  if (doc.contains("alignment")) {
    const json& a = doc["alignment"];
    if (!a.is_object()) config_error("alignment", "expected an object");
    if (a.contains("samples")) cfg.alignment_samples = positive_int(a["samples"], "alignment.samples");
    if (a.contains("seed")) {
      if (!a["seed"].is_number_unsigned()) config_error("alignment.seed", "expected a non-negative integer");
      cfg.seed = a["seed"].get<std::uint64_t>();
    }
  }

  if (doc.contains("group_weights")) {
    Vector w = detail::vector_from_json(doc["group_weights"], "group_weights", kConfig);
    if (w.size() != 2 || !(w(0) > 0.0) || !(w(1) > 0.0)) {
      config_error("group_weights", "expected two positive weights");
    }
    cfg.group_weights = std::array<double, 2>{w(0), w(1)};
  }

  if (doc.contains("output")) {
    const json& o = doc["output"];
    if (!o.is_object()) config_error("output", "expected an object");
    if (o.contains("path")) {
      if (!o["path"].is_string()) config_error("output.path", "expected a string");
      cfg.output_path = resolve(base_dir, o["path"].get<std::string>());
    }
    if (o.contains("format")) {
      const std::string f = o["format"].is_string() ? o["format"].get<std::string>() : "";
      if (f == "json") {
        cfg.format = OutputFormat::kJson;
      } else if (f == "csv") {
        cfg.format = OutputFormat::kCsv;
      } else {
        config_error("output.format", "expected \"json\" or \"csv\"");
      }
    }
  }

  if (!doc.contains("groupings") || !doc["groupings"].is_array() || doc["groupings"].empty()) {
    config_error("groupings", "expected a non-empty array");
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < doc["groupings"].size(); ++i) {
    const json& g = doc["groupings"][i];
    const std::string path = "groupings[" + std::to_string(i) + "]";
    if (!g.is_object()) config_error(path, "expected an object");
    if (!g.contains("name") || !g["name"].is_string()) config_error(path + ".name", "required string");
    GroupingEntry entry;
    entry.spec.name = g["name"].get<std::string>();
    if (!names.insert(entry.spec.name).second) {
      config_error(path + ".name", "duplicate grouping '" + entry.spec.name + "'");
    }
    if (g.contains("model")) {
      const json& m = g["model"];
      try {
        entry.model = m.is_string() ? load_model(resolve(base_dir, m.get<std::string>()), cfg.rank)
                                    : parse_model(m.dump(), cfg.rank);
      } catch (const Error& e) {
        throw Error(e.code(), path + ".model: " + e.what());
      }
    } else {
      if (!g.contains("group1") || !g.contains("group2")) {
        config_error(path, "needs \"group1\" and \"group2\" predicates or a \"model\"");
      }
      entry.spec.group1 = parse_predicate(g["group1"], path + ".group1");
      entry.spec.group2 = parse_predicate(g["group2"], path + ".group2");
      if (entry.spec.group1.otherwise && entry.spec.group2.otherwise) {
        config_error(path, "both groups are \"otherwise\"");
      }
      if (!cfg.dataset) config_error(path, "predicate groupings need a \"dataset\"");
    }
    cfg.groupings.push_back(std::move(entry));
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text(path), path.parent_path());
}

GroupingResult analyze_population(std::string name, const PopulationModel& pop,
                                  std::size_t alignment_samples, std::uint64_t seed) {
  GroupingResult r;
  r.name = std::move(name);
  r.effective_ranks = {pop.group1().effective_rank(), pop.group2().effective_rank()};
  r.weighted = pop.is_weighted();
  for (const SubgroupSpec* g : {&pop.group1(), &pop.group2()}) {
    for (const auto& w : g->warnings()) {
      r.warnings.push_back("G" + std::to_string(static_cast<int>(g->id())) + ": " + w);
    }
  }
  try {
    const ScoringRule rule = welfare_maximizing_rule(pop);
    r.rule = rule.weights();
    r.welfare_gain = welfare_gain(pop, rule);
    r.improvement[0] = improvement_report(pop, GroupId::kFirst, rule);
    r.improvement[1] = improvement_report(pop, GroupId::kSecond, rule);
    r.improvement_difference = improvement_difference(pop);
    r.conditions = check_conditions(pop);
    r.alignment = alignment(pop.group1().projection(), pop.group2().projection(), alignment_samples, seed);
    r.ok = true;
  } catch (const Error& e) {
    r.ok = false;
    r.error_code = e.code();
    r.error_message = e.what();
  }
  return r;
}

namespace {

GroupingResult failed(const std::string& name, const Error& e) {
  GroupingResult r;
  r.name = name;
  r.error_code = e.code();
  r.error_message = e.what();
  return r;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  ExperimentResult result;
  result.rank = config.rank;
  result.wstar_description = config.wstar.description;
  result.alignment_samples = config.alignment_samples;
  result.seed = config.seed;
  result.group_weights = config.group_weights;

  std::optional<Dataset> dataset;
  std::optional<ScoringRule> w_star;
  if (config.dataset) {
    LoadOptions options = config.dataset->options;
    for (const auto& entry : config.groupings) {
      if (entry.model) continue;
      for (const auto& col : entry.spec.referenced_columns()) options.required_columns.push_back(col);
    }
    if (config.wstar.kind == WstarKind::kFit) {
      options.required_columns.push_back(config.wstar.column);
      options.exclude_columns.push_back(config.wstar.column);
    }
    dataset = load_csv(config.dataset->path, config.dataset->manifest, options);
    result.dataset_path = config.dataset->display_path;
    result.dataset_rows = dataset->rows();
    result.dropped_missing = dataset->dropped_missing;
    result.feature_names = dataset->feature_names;
    result.standardized = dataset->standardized;
    if (dataset->rows() == 0) throw Error(ErrorCode::kEmptyData, "dataset has no usable rows");

    const auto d = static_cast<std::size_t>(dataset->features.cols());
    switch (config.wstar.kind) {
      case WstarKind::kOnes: w_star = ScoringRule::ones(d); break;
      case WstarKind::kFit:
        w_star = fit_ground_truth(dataset->features, dataset->column_values(config.wstar.column));
        break;
      case WstarKind::kVector:
        if (static_cast<std::size_t>(config.wstar.vector->size()) != d) {
          throw Error(kConfig, "wstar: vector has " + std::to_string(config.wstar.vector->size()) +
                                   " entries but the dataset has " + std::to_string(d) + " features");
        }
        w_star = ScoringRule(*config.wstar.vector);
        break;
    }
    result.w_star = w_star->weights();
  }

  const auto run_one = [&](const GroupingEntry& entry) -> GroupingResult {
    try {
      if (entry.model) {
        return analyze_population(entry.spec.name, *entry.model, config.alignment_samples, config.seed);
      }
      const GroupSplit split = split_groups(*dataset, entry.spec);
      const std::size_t d = w_star->dim();
      PopulationModel pop(
          *w_star,
          SubgroupSpec::from_data(GroupId::kFirst, config.costs[0].realize(d), split.group1, config.rank),
          SubgroupSpec::from_data(GroupId::kSecond, config.costs[1].realize(d), split.group2, config.rank),
          config.group_weights.value_or(std::array<double, 2>{1.0, 1.0}));
      GroupingResult r = analyze_population(entry.spec.name, pop, config.alignment_samples, config.seed);
      r.group_sizes = std::array<std::size_t, 2>{static_cast<std::size_t>(split.group1.rows()),
                                                 static_cast<std::size_t>(split.group2.rows())};
      r.excluded = split.excluded;
      return r;
    } catch (const Error& e) {
      return failed(entry.spec.name, e);
    }
  };

  // Groupings are independent; results are collected in input order, then sorted.
  std::size_t workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::max<std::size_t>(1, std::min(workers, config.groupings.size()));
  result.groupings.resize(config.groupings.size());
  std::vector<std::future<void>> pending;
  std::atomic<std::size_t> next{0};
  for (std::size_t t = 0; t < workers; ++t) {
    pending.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < config.groupings.size(); i = next++) {
        result.groupings[i] = run_one(config.groupings[i]);
      }
    }));
  }
  for (auto& f : pending) f.get();

  std::sort(result.groupings.begin(), result.groupings.end(),
            [](const GroupingResult& a, const GroupingResult& b) { return a.name < b.name; });
  return result;
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json verdict_json(const Verdict& v, bool inequality) {
  json j = {{"holds", v.holds}, {"value", v.value}};
  if (inequality) j["boundary"] = v.boundary;
  return j;
}

json conditions_json(const ConditionReport& c) {
  json j;
  j["tolerance"] = c.tolerance;
  j["do_no_harm"] = {{"group1", verdict_json(c.do_no_harm[0], true)},
                     {"group2", verdict_json(c.do_no_harm[1], true)}};
  j["equal_improvement"] = verdict_json(c.equal_improvement, false);
  json per_unit;
  for (int g = 0; g < 2; ++g) {
    const std::string key = "group" + std::to_string(g + 1);
    per_unit[key] = c.per_unit_optimal[g] ? verdict_json(*c.per_unit_optimal[g], false)
                                          : json{{"undefined", true}, {"reason", "ZeroProjectedRule"}};
  }
  j["per_unit_optimal"] = per_unit;
  j["fast_path"] = {{"kind", std::string(to_string(c.fast_path.kind))},
                    {"c", {optional_number(c.fast_path.c[0]), optional_number(c.fast_path.c[1])}}};
  return j;
}

json grouping_json(const GroupingResult& r) {
  json j;
  j["name"] = r.name;
  if (!r.ok) {
    j["status"] = "error";
    j["error"] = {{"code", std::string(to_string(*r.error_code))}, {"message", r.error_message}};
    return j;
  }
  j["status"] = "ok";
  if (r.group_sizes) {
    j["group_sizes"] = {{"group1", (*r.group_sizes)[0]}, {"group2", (*r.group_sizes)[1]},
                        {"excluded", r.excluded}};
  } else {
    j["group_sizes"] = nullptr;
  }
  j["effective_ranks"] = {{"group1", r.effective_ranks[0]}, {"group2", r.effective_ranks[1]}};
  j["rule"] = detail::vector_json(r.rule);
  j["welfare_gain"] = r.welfare_gain;
  j["I1"] = r.improvement[0].total_improvement;
  j["I2"] = r.improvement[1].total_improvement;
  j["uI1"] = optional_number(r.improvement[0].per_unit_improvement);
  j["uI2"] = optional_number(r.improvement[1].per_unit_improvement);
  j["uI1_star"] = optional_number(r.improvement[0].optimal_per_unit);
  j["uI2_star"] = optional_number(r.improvement[1].optimal_per_unit);
  j["per_unit_suboptimality"] = {{"group1", optional_number(r.improvement[0].per_unit_suboptimality)},
                                 {"group2", optional_number(r.improvement[1].per_unit_suboptimality)}};
  j["projected_rule_norm"] = {{"group1", r.improvement[0].projected_rule_norm},
                              {"group2", r.improvement[1].projected_rule_norm}};
  j["improvement_difference"] = r.improvement_difference;
  j["alignment"] = r.alignment;
  j["conditions"] = conditions_json(r.conditions);
  j["off_spec_group_weights"] = r.weighted;
  j["warnings"] = r.warnings;
  return j;
}

}  // namespace

std::string to_json(const ExperimentResult& result) {
  json doc;
  doc["schema_version"] = kResultSchemaVersion;
  doc["kind"] = "infodisc.analysis";
  doc["settings"] = {{"rank", result.rank},
                     {"wstar", result.wstar_description},
                     {"standardize", result.standardized},
                     {"alignment_samples", result.alignment_samples},
                     {"seed", result.seed},
                     {"group_weights", result.group_weights
                                           ? json{(*result.group_weights)[0], (*result.group_weights)[1]}
                                           : json(nullptr)}};
  if (result.dataset_path) {
    doc["dataset"] = {{"path", *result.dataset_path},
                      {"rows", result.dataset_rows},
                      {"dropped_missing", result.dropped_missing},
                      {"features", result.feature_names}};
  } else {
    doc["dataset"] = nullptr;
  }
  doc["w_star"] = result.w_star ? detail::vector_json(*result.w_star) : json(nullptr);
  json groupings = json::array();
  for (const auto& g : result.groupings) groupings.push_back(grouping_json(g));
  doc["groupings"] = std::move(groupings);
  return doc.dump(2) + "\n";
}

std::string to_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "grouping,status,n1,n2,excluded,rank1,rank2,welfare_gain,I1,I2,uI1,uI2,uI1_star,uI2_star,"
         "alignment,do_no_harm_1,do_no_harm_2,equal_improvement,per_unit_optimal_1,"
         "per_unit_optimal_2,fast_path\n";
  const auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("undefined");
  };
  const auto flag = [](bool b) { return b ? "true" : "false"; };
  for (const auto& r : result.groupings) {
    std::string name = r.name;
    if (name.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : name) quoted += (c == '"') ? std::string("\"\"") : std::string(1, c);
      name = quoted + "\"";
    }
    out << name << ',';
    if (!r.ok) {
      out << "error" << std::string(19, ',') << '\n';
      continue;
    }
    const auto size = [&](int g) {
      return r.group_sizes ? std::to_string((*r.group_sizes)[g]) : std::string();
    };
    const auto per_unit = [&](int g) {
      return r.conditions.per_unit_optimal[g] ? flag(r.conditions.per_unit_optimal[g]->holds)
                                              : "undefined";
    };
    out << "ok," << size(0) << ',' << size(1) << ',' << r.excluded << ',' << r.effective_ranks[0]
        << ',' << r.effective_ranks[1] << ',' << format_double(r.welfare_gain) << ','
        << format_double(r.improvement[0].total_improvement) << ','
        << format_double(r.improvement[1].total_improvement) << ','
        << opt(r.improvement[0].per_unit_improvement) << ','
        << opt(r.improvement[1].per_unit_improvement) << ','
        << opt(r.improvement[0].optimal_per_unit) << ',' << opt(r.improvement[1].optimal_per_unit)
        << ',' << format_double(r.alignment) << ',' << flag(r.conditions.do_no_harm[0].holds) << ','
        << flag(r.conditions.do_no_harm[1].holds) << ','
        << flag(r.conditions.equal_improvement.holds) << ',' << per_unit(0) << ',' << per_unit(1)
        << ',' << to_string(r.conditions.fast_path.kind) << '\n';
  }
  return out.str();
}

std::string condition_report_json(const PopulationModel& pop) {
  const ConditionReport report = check_conditions(pop);
  const ScoringRule rule = welfare_maximizing_rule(pop);
  json doc;
  doc["schema_version"] = kResultSchemaVersion;
  doc["kind"] = "infodisc.conditions";
  doc["rule"] = detail::vector_json(rule.weights());
  doc["welfare_gain"] = welfare_gain(pop, rule);
  doc["I1"] = total_improvement(pop.group1(), rule, pop.ground_truth());
  doc["I2"] = total_improvement(pop.group2(), rule, pop.ground_truth());
  doc["improvement_difference"] = improvement_difference(pop);
  doc["conditions"] = conditions_json(report);
  doc["off_spec_group_weights"] = pop.is_weighted();
  return doc.dump(2) + "\n";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyData:
    case ErrorCode::kEmptyPeerSet:
    case ErrorCode::kIoError:
    case ErrorCode::kParseError:
    case ErrorCode::kUnmappedCategory:
    case ErrorCode::kMissingColumn:
    case ErrorCode::kEmptyGroup:
      return 3;
    case ErrorCode::kDegenerateObjective:
    case ErrorCode::kZeroObjective:
    case ErrorCode::kZeroProjectedRule:
      return 4;
    default:
      return 2;
  }
}

int exit_code(const ExperimentResult& result) {
  std::set<int> codes;
  std::size_t failures = 0;
  for (const auto& g : result.groupings) {
    if (g.ok) continue;
    ++failures;
    codes.insert(exit_code_for(*g.error_code));
  }
  if (failures == 0) return 0;
  if (failures == result.groupings.size() && codes.size() == 1) return *codes.begin();
  return 5;
}

}  // namespace infodisc
