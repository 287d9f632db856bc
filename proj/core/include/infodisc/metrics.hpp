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

#include <optional>

#include "infodisc/agent.hpp"
#include "infodisc/principal.hpp"

namespace infodisc {

/// Improvement quantities for one subgroup under a deployed rule.
/// Per-unit fields are empty when the projected rule vanishes.
struct ImprovementReport {
  GroupId group = GroupId::kFirst;
  double total_improvement = 0.0;
  std::optional<double> per_unit_improvement;
  std::optional<double> optimal_per_unit;
  std::optional<double> per_unit_suboptimality;
  double projected_rule_norm = 0.0;
};

/// I_g(w~) = <A_g^{-1} P_g w~, w*>.
double total_improvement(const SubgroupSpec& g, const ScoringRule& w_tilde,
                         const ScoringRule& w_star);

/// I_g of the normalized projected rule. Throws kZeroProjectedRule when
/// ||P_g w~|| <= 1e-12.
double per_unit_improvement(const SubgroupSpec& g, const ScoringRule& w_tilde,
                            const ScoringRule& w_star);

/// Per-unit improvement at the group-optimal rule: the best any rule can do for g.
double optimal_per_unit_improvement(const SubgroupSpec& g, const ScoringRule& w_star);

/// I_1(w) - I_2(w) at the welfare-maximizing w, from the closed form
/// (||p1||^2 - ||p2||^2 style inner products over ||joint direction||).
double improvement_difference(const PopulationModel& pop);

/// Gram matrix of the group directions p_g = P_g A_g^{-1} w*:
/// gram[i][j] = <p_{i+1}, p_{j+1}>.
struct DirectionGram {
  double gram[2][2];
};
DirectionGram direction_gram(const PopulationModel& pop);

/// Every improvement metric for group g under `deployed`.
ImprovementReport improvement_report(const PopulationModel& pop, GroupId g,
                                     const ScoringRule& deployed);

}  // namespace infodisc
