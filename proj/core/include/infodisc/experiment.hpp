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

// Experiment runner: builds one population per grouping, deploys the
// welfare-maximizing rule and reports every improvement metric, the
// subspace alignment and the full condition report.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infodisc/conditions.hpp"
#include "infodisc/error.hpp"
#include "infodisc/ingest.hpp"
#include "infodisc/metrics.hpp"
#include "infodisc/principal.hpp"

namespace infodisc {

inline constexpr int kResultSchemaVersion = 1;

enum class WstarKind { kOnes, kFit, kVector };

/// Where the ground-truth rule comes from: all ones, a least-squares fit
/// on a label column, or an explicit vector.
struct WstarSource {
  WstarKind kind = WstarKind::kOnes;
  std::string column;
  std::optional<Vector> vector;
  std::string description = "ones";
};

/// "ones" | "fit:COLUMN" | "vector:FILE" (FILE relative to base_dir).
WstarSource parse_wstar(std::string_view spec, const std::filesystem::path& base_dir);

/// Cost matrix for one group: scale * I unless an explicit matrix is given.
struct CostSpec {
  double scale = 1.0;
  std::optional<Matrix> matrix;

  CostMatrix realize(std::size_t dim) const;
};

struct DatasetConfig {
  std::filesystem::path path;
  std::string display_path;
  EncodingManifest manifest;
  LoadOptions options;
};

/// A grouping either splits the dataset or carries its own population model.
struct GroupingEntry {
  GroupingSpec spec;
  std::optional<PopulationModel> model;
};

enum class OutputFormat { kJson, kCsv };

struct ExperimentConfig {
  std::optional<DatasetConfig> dataset;
  std::vector<GroupingEntry> groupings;
  std::size_t rank = 5;
  std::array<CostSpec, 2> costs;
  WstarSource wstar;
  std::size_t alignment_samples = 100000;
  std::uint64_t seed = 0;
  std::optional<std::array<double, 2>> group_weights;
  std::optional<std::filesystem::path> output_path;
  OutputFormat format = OutputFormat::kJson;
  /// Worker threads for groupings; 0 picks hardware concurrency.
  std::size_t threads = 0;
};

/// Parses a JSON config; relative paths resolve against `base_dir`.
/// Throws Error(kConfigError) with the offending key in the message.
ExperimentConfig parse_config(std::string_view json_text, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

struct GroupingResult {
  std::string name;
  bool ok = false;
  std::optional<ErrorCode> error_code;
  std::string error_message;

  // Absent for model-backed groupings.
  std::optional<std::array<std::size_t, 2>> group_sizes;
  std::size_t excluded = 0;
  std::array<std::size_t, 2> effective_ranks{};

  Vector rule;
  double welfare_gain = 0.0;
  std::array<ImprovementReport, 2> improvement;
  double improvement_difference = 0.0;
  double alignment = 0.0;
  ConditionReport conditions;
  bool weighted = false;
  std::vector<std::string> warnings;
};

struct ExperimentResult {
  std::size_t rank = 0;
  std::string wstar_description;
  bool standardized = false;
  std::size_t alignment_samples = 0;
  std::uint64_t seed = 0;
  std::optional<std::array<double, 2>> group_weights;

  std::optional<std::string> dataset_path;
  std::size_t dataset_rows = 0;
  std::size_t dropped_missing = 0;
  std::vector<std::string> feature_names;
  std::optional<Vector> w_star;

  /// Sorted by grouping name.
  std::vector<GroupingResult> groupings;
};

/// Every metric for one population under its welfare-maximizing rule.
/// Failures are captured in the result rather than thrown.
GroupingResult analyze_population(std::string name, const PopulationModel& pop,
                                  std::size_t alignment_samples, std::uint64_t seed);

/// Loads the dataset (ingest errors propagate) and analyzes every grouping;
/// per-grouping failures become error entries.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::string to_json(const ExperimentResult& result);
std::string to_csv(const ExperimentResult& result);

/// Condition report for one model, with the deployed rule and metrics.
std::string condition_report_json(const PopulationModel& pop);

/// 0 success, 2 config, 3 ingest, 4 numerical degeneracy.
int exit_code_for(ErrorCode code);

/// 0 when every grouping succeeded; 5 for partial failure; when all failed
/// with one category, that category's code.
int exit_code(const ExperimentResult& result);

}  // namespace infodisc
