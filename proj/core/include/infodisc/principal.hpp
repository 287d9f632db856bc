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

// The principal's side: the welfare objective over both subgroups and the
// closed-form rules that maximize it.

#include <array>
#include <cstddef>

#include "infodisc/agent.hpp"
#include "infodisc/linalg.hpp"

namespace infodisc {

/// Ground-truth rule plus the two subgroups.
///
/// `group_weights` defaults to (1, 1), the unweighted welfare sum. Any other
/// value is an extension beyond the two-group model and is reported as such.
class PopulationModel {
 public:
  PopulationModel(ScoringRule ground_truth, SubgroupSpec group1, SubgroupSpec group2,
                  std::array<double, 2> group_weights = {1.0, 1.0});

  const ScoringRule& ground_truth() const noexcept { return ground_truth_; }
  const SubgroupSpec& group(GroupId g) const noexcept {
    return g == GroupId::kFirst ? group1_ : group2_;
  }
  const SubgroupSpec& group1() const noexcept { return group1_; }
  const SubgroupSpec& group2() const noexcept { return group2_; }
  std::size_t dim() const noexcept { return ground_truth_.dim(); }

  const std::array<double, 2>& group_weights() const noexcept { return weights_; }
  bool is_weighted() const noexcept { return weights_[0] != 1.0 || weights_[1] != 1.0; }
  double weight(GroupId g) const noexcept { return weights_[index_of(g)]; }

  /// (A_g^{-1} P_g)^T w* = P_g A_g^{-1} w*.
  const Vector& group_direction(GroupId g) const noexcept { return directions_[index_of(g)]; }

  /// Sum over groups of the group directions: the unnormalized welfare-maximizing rule.
  const Vector& joint_direction() const noexcept { return joint_; }

  /// False when the joint direction vanishes and every rule has zero welfare gain.
  bool is_nondegenerate() const noexcept;

 private:
  ScoringRule ground_truth_;
  SubgroupSpec group1_;
  SubgroupSpec group2_;
  std::array<double, 2> weights_;
  std::array<Vector, 2> directions_;
  Vector joint_;
};

/// <(A1^{-1}P1 + A2^{-1}P2) w, w*>: the part of expected post-response
/// welfare that depends on w.
double welfare_gain(const PopulationModel& pop, const ScoringRule& w);

/// Unit-norm rule maximizing welfare_gain over ||w|| <= 1.
ScoringRule welfare_maximizing_rule(const PopulationModel& pop);

/// Unit-norm rule maximizing the improvement of group `g` alone.
ScoringRule group_optimal_rule(const SubgroupSpec& g, const ScoringRule& w_star);

}  // namespace infodisc
