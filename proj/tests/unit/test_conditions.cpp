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

#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "infodisc/conditions.hpp"
#include "infodisc/error.hpp"
#include "infodisc/metrics.hpp"
#include "oracles.hpp"

namespace {

using namespace infodisc;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an infodisc::Error";
  return ErrorCode::kConfigError;
}

// The checker scalars written out term by term with explicit inverses.
double literal_do_no_harm(const oracle::Instance& s, int g) {
  const Matrix i1 = s.a1.inverse(), i2 = s.a2.inverse();
  const Matrix& pg = g == 0 ? s.p1 : s.p2;
  const Matrix& ig = g == 0 ? i1 : i2;
  const Matrix m = i1 * s.p1 * pg.transpose() * ig.transpose() + i2 * s.p2 * pg.transpose() * ig.transpose();
  return (m.transpose() * s.w_star).dot(s.w_star);
}

double literal_equal(const oracle::Instance& s) {
  const Matrix i1 = s.a1.inverse(), i2 = s.a2.inverse();
  const Matrix t = i1 * s.p1 * s.p1.transpose() * i1.transpose() + i2 * s.p2 * s.p1.transpose() * i1.transpose() -
                   i1 * s.p1 * s.p2.transpose() * i2.transpose() - i2 * s.p2 * s.p2.transpose() * i2.transpose();
  return (t.transpose() * s.w_star).dot(s.w_star);
}

double literal_per_unit(const oracle::Instance& s, int g) {
  const Matrix& a = g == 0 ? s.a1 : s.a2;
  const Matrix& p = g == 0 ? s.p1 : s.p2;
  const Matrix ai = a.inverse();
  const Vector u = p * (ai * p).transpose() * s.w_star;
  const Vector c = oracle::welfare_direction(s);
  const Vector pc = p * c;
  return (ai * u / u.norm() - ai * pc / pc.norm()).dot(s.w_star);
}

TEST(Conditions, ScalarsMatchLiteralFormulas) {
  oracle::Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = fixtures::random_instance(oracle::uniform_int(1, 10, rng), rng);
    const PopulationModel pop = fixtures::to_population(s);
    for (int g = 0; g < 2; ++g) {
      const GroupId id = g == 0 ? GroupId::kFirst : GroupId::kSecond;
      EXPECT_NEAR(check_do_no_harm(pop, id).value, literal_do_no_harm(s, g), 1e-8);
      const Matrix& p = g == 0 ? s.p1 : s.p2;
      const Matrix& a = g == 0 ? s.a1 : s.a2;
      if ((p * a.inverse() * s.w_star).norm() > 1e-6 && (p * oracle::welfare_direction(s)).norm() > 1e-6) {
        const double value = check_per_unit_optimality(pop, id).value;
        EXPECT_NEAR(value, literal_per_unit(s, g), 1e-7);
        const Vector w = oracle::optimal_rule(s);
        EXPECT_NEAR(value, oracle::optimal_per_unit(a, p, s.w_star) - oracle::per_unit(a, p, s.w_star, w), 1e-7);
      }
    }
    EXPECT_NEAR(check_equal_improvement(pop).value, literal_equal(s), 1e-8);
  }
}

TEST(Conditions, DisparityExample) {
  const PopulationModel pop = disparity_example(0.1);
  const ConditionReport r = check_conditions(pop);
  EXPECT_TRUE(r.do_no_harm[0].holds);
  EXPECT_TRUE(r.do_no_harm[1].holds);
  EXPECT_FALSE(r.equal_improvement.holds);
  ASSERT_TRUE(r.per_unit_optimal[0] && r.per_unit_optimal[1]);
  EXPECT_TRUE(r.per_unit_optimal[0]->holds);
  EXPECT_TRUE(r.per_unit_optimal[1]->holds);
  EXPECT_EQ(r.fast_path.kind, FastPathKind::kOrthogonalSubspaces);

  const ScoringRule w = welfare_maximizing_rule(pop);
  EXPECT_NEAR(w.weights()(0), 0.1, 1e-12);
  EXPECT_NEAR(w.weights()(1), std::sqrt(0.99), 1e-12);
  EXPECT_NEAR(total_improvement(pop.group1(), w, pop.ground_truth()), 0.01, 1e-12);
  EXPECT_NEAR(total_improvement(pop.group2(), w, pop.ground_truth()), 0.99, 1e-12);
}

TEST(Conditions, DisparityExampleBoundaryAndErrors) {
  const ConditionReport r = check_conditions(disparity_example(1.0 / std::sqrt(2.0)));
  EXPECT_TRUE(r.equal_improvement.holds);
  EXPECT_EQ(code_of([] { disparity_example(1.5); }), ErrorCode::kEpsilonOutOfRange);
  EXPECT_EQ(code_of([] { disparity_example(0.0); }), ErrorCode::kEpsilonOutOfRange);
  EXPECT_EQ(code_of([] { disparity_example(1.0); }), ErrorCode::kEpsilonOutOfRange);
}

TEST(Conditions, OrthogonalSubspacesDoNoHarmAndArePerUnitOptimal) {
  oracle::Rng rng(103);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = oracle::uniform_int(2, 10, rng);
    const Matrix q = oracle::random_orthogonal(d, rng);
    const std::size_t r1 = oracle::uniform_int(1, d - 1, rng);
    const std::size_t r2 = oracle::uniform_int(1, d - r1, rng);
    oracle::Instance s;
    s.w_star = oracle::gaussian_vector(d, rng);
    s.a1 = oracle::random_spd(d, rng);
    s.a2 = oracle::random_spd(d, rng);
    s.p1 = oracle::projector(q.leftCols(static_cast<Eigen::Index>(r1)));
    s.p2 = oracle::projector(q.middleCols(static_cast<Eigen::Index>(r1), static_cast<Eigen::Index>(r2)));
    const PopulationModel pop = fixtures::to_population(s);
    const ConditionReport r = check_conditions(pop);
    EXPECT_EQ(r.fast_path.kind, FastPathKind::kOrthogonalSubspaces);
    EXPECT_TRUE(r.do_no_harm[0].holds);
    EXPECT_TRUE(r.do_no_harm[1].holds);
    for (int g = 0; g < 2; ++g) {
      if (r.per_unit_optimal[g]) {
        EXPECT_TRUE(r.per_unit_optimal[g]->holds);
        ASSERT_TRUE(r.fast_path.c[g].has_value());
        EXPECT_NEAR(*r.fast_path.c[g], 1.0, 1e-9);
      }
    }
  }
}

TEST(Conditions, ScaledCostsOnEqualSubspaces) {
  oracle::Rng rng(104);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = oracle::uniform_int(1, 10, rng);
    const double a = oracle::uniform(0.1, 10.0, rng);
    oracle::Instance s;
    s.w_star = oracle::gaussian_vector(d, rng);
    s.a1 = oracle::random_spd(d, rng);
    s.a2 = a * s.a1;
    s.p1 = s.p2 = oracle::random_projection(d, oracle::uniform_int(1, d, rng), rng);
    if ((s.p1 * s.a1.inverse() * s.w_star).norm() < 1e-6) continue;
    const ConditionReport r = check_conditions(fixtures::to_population(s));
    EXPECT_EQ(r.fast_path.kind, FastPathKind::kScaledEqual);
    EXPECT_TRUE(r.do_no_harm[0].holds && r.do_no_harm[1].holds);
    EXPECT_TRUE(r.per_unit_optimal[0]->holds && r.per_unit_optimal[1]->holds);
    // Equal improvement exactly when the costs coincide.
    EXPECT_EQ(r.equal_improvement.holds, std::abs(a - 1.0) < 1e-12);
  }
}

TEST(Conditions, SufficientConditionImpliesPerUnitOptimality) {
  oracle::Rng rng(105);
  int witnessed = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = fixtures::random_instance(oracle::uniform_int(1, 4, rng), rng);
    const PopulationModel pop = fixtures::to_population(s);
    for (GroupId g : {GroupId::kFirst, GroupId::kSecond}) {
      if (const auto c = check_sufficient_per_unit(pop, g)) {
        ++witnessed;
        EXPECT_GT(*c, 0.0);
        EXPECT_TRUE(check_per_unit_optimality(pop, g).holds);
      }
    }
  }
  EXPECT_GT(witnessed, 0);
}

TEST(Conditions, DoNoHarmVerdictTracksImprovementSign) {
  // Overlapping subspaces with very different costs: group 2's pull rotates
  // the rule away from what group 1 can use.
  Vector w(2);
  w << 1.0, 0.0;
  Matrix a1 = Matrix::Identity(2, 2), a2 = Matrix::Identity(2, 2);
  a1 *= 100.0;
  a2(0, 0) = 100.0;
  a2(1, 1) = 0.01;
  Matrix b2(2, 1);
  b2 << 0.1, -1.0;
  b2 /= b2.norm();
  Matrix b1(2, 1);
  b1 << 1.0, 0.0;
  oracle::Instance s{w, a1, a2, oracle::projector(b1), oracle::projector(b2)};
  const PopulationModel pop = fixtures::to_population(s);
  const ConditionReport r = check_conditions(pop);
  const ScoringRule rule = welfare_maximizing_rule(pop);
  const double i1 = total_improvement(pop.group1(), rule, pop.ground_truth());
  EXPECT_EQ(r.do_no_harm[0].holds, i1 >= 0.0);
  EXPECT_NEAR(r.do_no_harm[0].value, literal_do_no_harm(s, 0), 1e-10);
}

TEST(Conditions, ToleranceScalesWithCostsAndTruth) {
  oracle::Rng rng(106);
  const auto s = fixtures::random_instance(4, rng);
  const PopulationModel pop = fixtures::to_population(s);
  Eigen::SelfAdjointEigenSolver<Matrix> e1(s.a1), e2(s.a2);
  const double kappa = std::max(1.0 / e1.eigenvalues()(0), 1.0 / e2.eigenvalues()(0));
  EXPECT_NEAR(condition_tolerance(pop), 1e-8 * std::max(1.0, s.w_star.squaredNorm() * kappa * kappa), 1e-18);
}

}  // namespace
