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

// Checkers for when the welfare-maximizing rule does no harm, equalizes
// total improvement, or attains optimal per-unit improvement per subgroup.
//
// Every checker returns the raw scalar it judged alongside the verdict so a
// caller can re-judge under a different tolerance.

#include <array>
#include <optional>
#include <string_view>

#include "infodisc/principal.hpp"

namespace infodisc {

struct Verdict {
  bool holds = false;
  double value = 0.0;
  /// Inequality checks only: |value| < tolerance, reported as holding.
  bool boundary = false;
};

enum class FastPathKind {
  kNone,
  kOrthogonalSubspaces,
  kScaledEqual,
  kSufficientCg,
};

std::string_view to_string(FastPathKind kind);

struct FastPath {
  FastPathKind kind = FastPathKind::kNone;
  /// c_g witnesses of the collinearity sufficient condition, when present.
  std::array<std::optional<double>, 2> c;
};

struct ConditionReport {
  double tolerance = 0.0;
  std::array<Verdict, 2> do_no_harm;
  Verdict equal_improvement;
  /// Empty for a group whose projected rule (or group direction) vanishes.
  std::array<std::optional<Verdict>, 2> per_unit_optimal;
  FastPath fast_path;
};

/// 1e-8 * max(1, ||w*||^2 * max_g ||A_g^{-1}||_2^2).
double condition_tolerance(const PopulationModel& pop);

/// Do-no-harm for g: value = <(sum_i A_i^{-1} P_i P_g A_g^{-1})^T w*, w*>, holds iff value >= -tol.
Verdict check_do_no_harm(const PopulationModel& pop, GroupId g);

/// Equal total improvement: the four-term inner product, holds iff |value| <= tol.
Verdict check_equal_improvement(const PopulationModel& pop);

/// Optimal per-unit improvement for g:
/// value = <A_g^{-1} u_g/||u_g|| - A_g^{-1} P_g c/||P_g c||, w*>, with
/// u_g = P_g (A_g^{-1} P_g)^T w* and c the joint direction. Equals the
/// per-unit suboptimality uI*_g - uI_g(w). Holds iff |value| <= tol.
Verdict check_per_unit_optimality(const PopulationModel& pop, GroupId g);

/// Returns c_g > 0 when P_g (A_g^{-1} P_g)^T w* = c_g P_g c, i.e. the
/// sufficient condition for per-unit optimality.
std::optional<double> check_sufficient_per_unit(const PopulationModel& pop, GroupId g);

/// Structural shortcuts that guarantee some conditions regardless of w*.
FastPath detect_fast_path(const PopulationModel& pop);

/// Runs every checker. Throws kDegenerateObjective if the joint direction vanishes.
ConditionReport check_conditions(const PopulationModel& pop);

/// Two-dimensional instance with identity costs, axis-aligned subspaces and
/// w* = (eps, sqrt(1 - eps^2)): per-unit optimal in both groups while
/// I_1 / I_2 = eps^2 / (1 - eps^2).
PopulationModel disparity_example(double epsilon);

}  // namespace infodisc
