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

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "infodisc/conditions.hpp"
#include "infodisc/experiment.hpp"
#include "infodisc/ingest.hpp"
#include "infodisc/linalg.hpp"
#include "infodisc/model_io.hpp"

namespace {

using namespace infodisc;

void emit(const std::string& text, const std::optional<std::string>& path) {
  if (!path || *path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(*path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + *path);
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + *path);
}

struct AnalyzeArgs {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> rank;
  std::optional<std::string> wstar;
  bool standardize = false;
};

int run_analyze(const AnalyzeArgs& args) {
  ExperimentConfig cfg = load_config(args.config);
  if (args.seed) cfg.seed = *args.seed;
  if (args.rank) cfg.rank = *args.rank;
  if (args.wstar) cfg.wstar = parse_wstar(*args.wstar, std::filesystem::current_path());
  if (args.standardize) {
    if (!cfg.dataset) throw Error(ErrorCode::kConfigError, "--standardize needs a dataset");
    cfg.dataset->options.standardize = true;
  }
  if (args.format) cfg.format = *args.format == "csv" ? OutputFormat::kCsv : OutputFormat::kJson;

  const ExperimentResult result = run_experiment(cfg);
  std::optional<std::string> out = args.out;
  if (!out && cfg.output_path) out = cfg.output_path->string();
  emit(cfg.format == OutputFormat::kCsv ? to_csv(result) : to_json(result), out);

  for (const auto& g : result.groupings) {
    if (!g.ok) std::cerr << "grouping '" << g.name << "' failed: " << g.error_message << '\n';
  }
  return exit_code(result);
}

struct AlignmentArgs {
  std::optional<std::string> model;
  std::optional<std::string> data1;
  std::optional<std::string> data2;
  std::size_t rank = 5;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
};

int run_alignment(const AlignmentArgs& args) {
  nlohmann::json report;
  double value = 0.0;
  if (args.model) {
    if (args.data1 || args.data2) {
      throw Error(ErrorCode::kConfigError, "give either --model or --data1/--data2, not both");
    }
    const PopulationModel pop = load_model(*args.model, args.rank);
    value = alignment(pop.group1().projection(), pop.group2().projection(), args.samples, args.seed);
    report["source"] = {{"model", *args.model}};
  } else {
    if (!args.data1 || !args.data2) {
      throw Error(ErrorCode::kConfigError, "alignment needs --model or both --data1 and --data2");
    }
    const Dataset d1 = load_csv(*args.data1, EncodingManifest{});
    const Dataset d2 = load_csv(*args.data2, EncodingManifest{});
    if (d1.feature_names != d2.feature_names) {
      throw Error(ErrorCode::kMissingColumn, "--data1 and --data2 have different feature columns");
    }
    const SubspaceProjection s1 = subspace_projection(d1.features, args.rank);
    const SubspaceProjection s2 = subspace_projection(d2.features, args.rank);
    value = alignment(s1.projection, s2.projection, args.samples, args.seed);
    report["source"] = {{"data1", *args.data1}, {"data2", *args.data2}, {"rank", args.rank}};
    report["effective_ranks"] = {s1.effective_rank, s2.effective_rank};
  }
  report["schema_version"] = kResultSchemaVersion;
  report["kind"] = "infodisc.alignment";
  report["alignment"] = value;
  report["samples"] = args.samples;
  report["seed"] = args.seed;
  emit(report.dump(2) + "\n", args.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Improvement, fairness conditions and subspace alignment for two-group populations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "infodisc 0.1.0");

  AnalyzeArgs analyze;
  auto* cmd_analyze = app.add_subcommand("analyze", "Run every grouping of an experiment config");
  cmd_analyze->add_option("--config", analyze.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  cmd_analyze->add_option("--out", analyze.out, "Output path; stdout when omitted");
  cmd_analyze->add_option("--format", analyze.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd_analyze->add_option("--seed", analyze.seed, "Alignment sampling seed");
  cmd_analyze->add_option("--rank", analyze.rank, "Projection rank k")->check(CLI::PositiveNumber);
  cmd_analyze->add_option("--wstar", analyze.wstar, "ones | fit:COLUMN | vector:FILE");
  cmd_analyze->add_flag("--standardize", analyze.standardize, "Z-score features before projecting");

  std::string check_model;
  std::optional<std::string> check_out;
  auto* cmd_check = app.add_subcommand("check", "Condition report for a model file");
  cmd_check->add_option("--model", check_model, "Model file (JSON)")->required()->check(CLI::ExistingFile);
  cmd_check->add_option("--out", check_out, "Output path; stdout when omitted");

  double epsilon = 0.0;
  std::optional<std::string> synthetic_out;
  auto* cmd_synthetic = app.add_subcommand("synthetic", "Write the two-axis disparity model");
  cmd_synthetic->add_option("--epsilon", epsilon, "Weight of the first axis, 0 < epsilon < 1")->required();
  cmd_synthetic->add_option("--out", synthetic_out, "Output path; stdout when omitted");

  AlignmentArgs align;
  auto* cmd_alignment = app.add_subcommand("alignment", "Monte Carlo alignment of two subspaces");
  cmd_alignment->add_option("--model", align.model, "Model file (JSON)")->check(CLI::ExistingFile);
  cmd_alignment->add_option("--data1", align.data1, "Numeric CSV for group 1")->check(CLI::ExistingFile);
  cmd_alignment->add_option("--data2", align.data2, "Numeric CSV for group 2")->check(CLI::ExistingFile);
  cmd_alignment->add_option("--rank", align.rank, "Projection rank k")->check(CLI::PositiveNumber);
  cmd_alignment->add_option("--samples", align.samples, "Number of random unit vectors")->check(CLI::PositiveNumber);
  cmd_alignment->add_option("--seed", align.seed, "Sampling seed");
  cmd_alignment->add_option("--out", align.out, "Output path; stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_analyze) return run_analyze(analyze);
    if (*cmd_check) {
      emit(condition_report_json(load_model(check_model)), check_out);
      return 0;
    }
    if (*cmd_synthetic) {
      emit(write_model(disparity_example(epsilon)), synthetic_out);
      return 0;
    }
    if (*cmd_alignment) return run_alignment(align);
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
