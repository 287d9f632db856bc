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

#include "infodisc/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "infodisc/error.hpp"
#include "infodisc/metrics.hpp"

namespace infodisc {

namespace {

constexpr double kCollinearity = 1e-8;

void require_nondegenerate(const PopulationModel& pop) {
  if (!pop.is_nondegenerate()) {
    throw Error(ErrorCode::kDegenerateObjective,
                "(A1^-1 P1 + A2^-1 P2)^T w* vanishes; welfare gain is identically zero");
  }
}

Verdict inequality(double value, double tol) {
  return Verdict{value >= -tol, value, std::abs(value) < tol};
}

Verdict equality(double value, double tol) { return Verdict{std::abs(value) <= tol, value, false}; }

}  // namespace

std::string_view to_string(FastPathKind kind) {
  switch (kind) {
    case FastPathKind::kNone: return "none";
    case FastPathKind::kOrthogonalSubspaces: return "orthogonal_subspaces";
    case FastPathKind::kScaledEqual: return "scaled_equal";
    case FastPathKind::kSufficientCg: return "sufficient_cg";
  }
  return "none";
}

double condition_tolerance(const PopulationModel& pop) {
  const double kappa = std::max(pop.group1().cost().inverse_operator_norm(),
                                pop.group2().cost().inverse_operator_norm());
  const double w2 = pop.ground_truth().weights().squaredNorm();
  return 1e-8 * std::max(1.0, w2 * kappa * kappa);
}

Verdict check_do_no_harm(const PopulationModel& pop, GroupId g) {
  require_nondegenerate(pop);
  const DirectionGram gram = direction_gram(pop);
  const int k = index_of(g);
  // w*^T A_i^-1 P_i P_g A_g^-1 w* = <p_i, p_g>
  const double value = pop.weight(GroupId::kFirst) * gram.gram[0][k] +
                       pop.weight(GroupId::kSecond) * gram.gram[1][k];
  return inequality(value, condition_tolerance(pop));
}

Verdict check_equal_improvement(const PopulationModel& pop) {
  require_nondegenerate(pop);
  const DirectionGram gram = direction_gram(pop);
  const double w1 = pop.weight(GroupId::kFirst);
  const double w2 = pop.weight(GroupId::kSecond);
  const double value =
      w1 * gram.gram[0][0] + w2 * gram.gram[1][0] - w1 * gram.gram[0][1] - w2 * gram.gram[1][1];
  return equality(value, condition_tolerance(pop));
}

Verdict check_per_unit_optimality(const PopulationModel& pop, GroupId g) {
  require_nondegenerate(pop);
  const SubgroupSpec& group = pop.group(g);
  const Vector& w_star = pop.ground_truth().weights();

  const Vector own = group.projection().apply(pop.group_direction(g));
  const Vector joint = group.projection().apply(pop.joint_direction());
  const double own_norm = own.norm();
  const double joint_norm = joint.norm();
  if (own_norm <= tol::kZeroNorm || joint_norm <= tol::kZeroNorm) {
    throw Error(ErrorCode::kZeroProjectedRule,
                "per-unit optimality undefined: a normalizing projection vanishes");
  }
  const Vector diff = group.cost().solve(own / own_norm) - group.cost().solve(joint / joint_norm);
  return equality(diff.dot(w_star), condition_tolerance(pop));
}

std::optional<double> check_sufficient_per_unit(const PopulationModel& pop, GroupId g) {
  require_nondegenerate(pop);
  const SubgroupSpec& group = pop.group(g);
  const Vector own = group.projection().apply(pop.group_direction(g));
  const Vector joint = group.projection().apply(pop.joint_direction());
  const double own_norm = own.norm();
  const double joint_norm = joint.norm();
  if (own_norm <= tol::kZeroNorm || joint_norm <= tol::kZeroNorm) return std::nullopt;
  if (own.dot(joint) <= 0.0) return std::nullopt;
  if ((own / own_norm - joint / joint_norm).norm() > kCollinearity) return std::nullopt;
  return own_norm / joint_norm;
}

FastPath detect_fast_path(const PopulationModel& pop) {
  FastPath out;
  out.c[0] = check_sufficient_per_unit(pop, GroupId::kFirst);
  out.c[1] = check_sufficient_per_unit(pop, GroupId::kSecond);

  const Matrix& p1 = pop.group1().projection().matrix();
  const Matrix& p2 = pop.group2().projection().matrix();
  const double scale = tol::kIdempotence * static_cast<double>(pop.dim());
  if ((p1 * p2).norm() <= scale) {
    out.kind = FastPathKind::kOrthogonalSubspaces;
    return out;
  }
  if ((p1 - p2).norm() <= scale) {
    const Matrix& a1 = pop.group1().cost().matrix();
    const Matrix& a2 = pop.group2().cost().matrix();
    const double a = (a1.array() * a2.array()).sum() / a1.squaredNorm();
    if (a > 0.0 && (a2 - a * a1).norm() <= tol::kIdempotence * a2.norm()) {
      out.kind = FastPathKind::kScaledEqual;
      return out;
    }
  }
  if (out.c[0] && out.c[1]) out.kind = FastPathKind::kSufficientCg;
  return out;
}

ConditionReport check_conditions(const PopulationModel& pop) {
  require_nondegenerate(pop);
  ConditionReport r;
  r.tolerance = condition_tolerance(pop);
  for (GroupId g : {GroupId::kFirst, GroupId::kSecond}) {
    r.do_no_harm[index_of(g)] = check_do_no_harm(pop, g);
    try {
      r.per_unit_optimal[index_of(g)] = check_per_unit_optimality(pop, g);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kZeroProjectedRule) throw;
    }
  }
  r.equal_improvement = check_equal_improvement(pop);
  r.fast_path = detect_fast_path(pop);
  return r;
}

PopulationModel disparity_example(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    std::ostringstream msg;
    msg << "epsilon must lie in (0, 1), got " << epsilon;
    throw Error(ErrorCode::kEpsilonOutOfRange, msg.str());
  }
  Matrix p1 = Matrix::Zero(2, 2);
  p1(0, 0) = 1.0;
  Matrix p2 = Matrix::Zero(2, 2);
  p2(1, 1) = 1.0;
  Vector w_star(2);
  w_star << epsilon, std::sqrt(1.0 - epsilon * epsilon);
  return PopulationModel(ScoringRule(std::move(w_star)),
                         SubgroupSpec(GroupId::kFirst, CostMatrix::identity(2), ProjectionMatrix(p1)),
                         SubgroupSpec(GroupId::kSecond, CostMatrix::identity(2), ProjectionMatrix(p2)));
}

}  // namespace infodisc
