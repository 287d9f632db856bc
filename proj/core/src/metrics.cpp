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

#include "infodisc/metrics.hpp"

#include "infodisc/error.hpp"

namespace infodisc {

double total_improvement(const SubgroupSpec& g, const ScoringRule& w_tilde,
                         const ScoringRule& w_star) {
  // movement(P_g w~) = A_g^{-1} P_g P_g w~ = movement(w~)
  const Vector delta = movement(g, w_tilde);
  if (delta.size() != w_star.weights().size()) {
    throw Error(ErrorCode::kDimMismatch, "total_improvement: ground truth dimension mismatch");
  }
  return delta.dot(w_star.weights());
}

double per_unit_improvement(const SubgroupSpec& g, const ScoringRule& w_tilde,
                            const ScoringRule& w_star) {
  const double norm = g.projection().apply(w_tilde.weights()).norm();
  if (norm <= tol::kZeroNorm) {
    throw Error(ErrorCode::kZeroProjectedRule,
                "per-unit improvement undefined: rule has no component in the subgroup subspace");
  }
  return total_improvement(g, w_tilde, w_star) / norm;
}

double optimal_per_unit_improvement(const SubgroupSpec& g, const ScoringRule& w_star) {
  return per_unit_improvement(g, group_optimal_rule(g, w_star), w_star);
}

DirectionGram direction_gram(const PopulationModel& pop) {
  DirectionGram out{};
  const Vector* p[2] = {&pop.group_direction(GroupId::kFirst),
                        &pop.group_direction(GroupId::kSecond)};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.gram[i][j] = p[i]->dot(*p[j]);
  }
  return out;
}

double improvement_difference(const PopulationModel& pop) {
  if (!pop.is_nondegenerate()) {
    throw Error(ErrorCode::kDegenerateObjective, "improvement_difference: joint direction vanishes");
  }
  const DirectionGram g = direction_gram(pop);
  const double w1 = pop.weight(GroupId::kFirst);
  const double w2 = pop.weight(GroupId::kSecond);
  // <(A1^-1 P1 P1 A1^-1 + A2^-1 P2 P1 A1^-1 - A1^-1 P1 P2 A2^-1 - A2^-1 P2 P2 A2^-1)^T w*, w*>
  const double numerator = w1 * g.gram[0][0] + w2 * g.gram[1][0] - w1 * g.gram[0][1] -
                           w2 * g.gram[1][1];
  return numerator / pop.joint_direction().norm();
}

ImprovementReport improvement_report(const PopulationModel& pop, GroupId g,
                                     const ScoringRule& deployed) {
  const SubgroupSpec& group = pop.group(g);
  const ScoringRule& w_star = pop.ground_truth();

  ImprovementReport r;
  r.group = g;
  r.total_improvement = total_improvement(group, deployed, w_star);
  r.projected_rule_norm = group.projection().apply(deployed.weights()).norm();
  if (r.projected_rule_norm > tol::kZeroNorm) {
    r.per_unit_improvement = r.total_improvement / r.projected_rule_norm;
  }
  if (pop.group_direction(g).norm() > tol::kZeroNorm) {
    r.optimal_per_unit = optimal_per_unit_improvement(group, w_star);
  }
  if (r.per_unit_improvement && r.optimal_per_unit) {
    r.per_unit_suboptimality = *r.optimal_per_unit - *r.per_unit_improvement;
  }
  return r;
}

}  // namespace infodisc
