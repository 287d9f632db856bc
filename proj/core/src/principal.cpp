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

#include "infodisc/principal.hpp"

#include <cmath>
#include <utility>

#include "infodisc/error.hpp"

namespace infodisc {

namespace {

Vector direction_for(const SubgroupSpec& g, const ScoringRule& w_star) {
  // A_g and P_g are symmetric, so (A_g^{-1} P_g)^T w* = P_g A_g^{-1} w*.
  return g.projection().apply(g.cost().solve(w_star.weights()));
}

}  // namespace

PopulationModel::PopulationModel(ScoringRule ground_truth, SubgroupSpec group1, SubgroupSpec group2,
                                 std::array<double, 2> group_weights)
    : ground_truth_(std::move(ground_truth)),
      group1_(std::move(group1)),
      group2_(std::move(group2)),
      weights_(group_weights) {
  if (group1_.dim() != ground_truth_.dim() || group2_.dim() != ground_truth_.dim()) {
    throw Error(ErrorCode::kDimMismatch, "population: subgroup and ground-truth dimensions differ");
  }
  if (group1_.id() != GroupId::kFirst || group2_.id() != GroupId::kSecond) {
    throw Error(ErrorCode::kInvalidArgument, "population: subgroups must be ordered (G1, G2)");
  }
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kInvalidArgument, "population: group weights must be positive");
    }
  }
  directions_[0] = direction_for(group1_, ground_truth_);
  directions_[1] = direction_for(group2_, ground_truth_);
  joint_ = weights_[0] * directions_[0] + weights_[1] * directions_[1];
}

bool PopulationModel::is_nondegenerate() const noexcept { return joint_.norm() > tol::kZeroNorm; }

double welfare_gain(const PopulationModel& pop, const ScoringRule& w) {
  const Vector& w_star = pop.ground_truth().weights();
  return pop.weight(GroupId::kFirst) * movement(pop.group1(), w).dot(w_star) +
         pop.weight(GroupId::kSecond) * movement(pop.group2(), w).dot(w_star);
}

ScoringRule welfare_maximizing_rule(const PopulationModel& pop) {
  if (!pop.is_nondegenerate()) {
    throw Error(ErrorCode::kDegenerateObjective,
                "welfare gain is identically zero: (A1^-1 P1 + A2^-1 P2)^T w* vanishes");
  }
  const auto d = static_cast<Eigen::Index>(pop.dim());
  // max <c, w> s.t. w^T I w <= 1
  return ScoringRule(maximize_linear_under_quadratic(pop.joint_direction(), Matrix::Identity(d, d), 1.0));
}

ScoringRule group_optimal_rule(const SubgroupSpec& g, const ScoringRule& w_star) {
  if (g.dim() != w_star.dim()) {
    throw Error(ErrorCode::kDimMismatch, "group_optimal_rule: dimension mismatch");
  }
  const Vector dir = direction_for(g, w_star);
  const double norm = dir.norm();
  if (norm <= tol::kZeroNorm) {
    throw Error(ErrorCode::kDegenerateObjective,
                "group cannot improve: (A_g^-1 P_g)^T w* vanishes");
  }
  return ScoringRule(dir / norm);
}

}  // namespace infodisc
