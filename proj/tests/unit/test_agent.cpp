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

#include <functional>

#include <gtest/gtest.h>

#include "infodisc/agent.hpp"
#include "infodisc/error.hpp"
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

TEST(CostMatrix, ValidatesPositiveDefiniteness) {
  Matrix m(2, 2);
  m << 1, 2, 2, 1;
  EXPECT_EQ(code_of([&] { CostMatrix c(m); }), ErrorCode::kNotPositiveDefinite);
  m << 1, 0.1, 0.0, 1;
  EXPECT_EQ(code_of([&] { CostMatrix c(m); }), ErrorCode::kNotPositiveDefinite);
  EXPECT_EQ(code_of([] { CostMatrix::scaled_identity(3, 0.0); }), ErrorCode::kNotPositiveDefinite);
}

TEST(CostMatrix, SolveMatchesExplicitInverse) {
  oracle::Rng rng(2);
  const Matrix a = oracle::random_spd(6, rng, 0.5, 3.0);
  const CostMatrix cost(a);
  const Vector v = oracle::gaussian_vector(6, rng);
  EXPECT_LT((cost.solve(v) - a.inverse() * v).norm(), 1e-10);
  Eigen::SelfAdjointEigenSolver<Matrix> es(a);
  EXPECT_NEAR(cost.inverse_operator_norm(), 1.0 / es.eigenvalues()(0), 1e-10);
}

TEST(ScoringRule, RejectsNonFinite) {
  Vector w(2);
  w << 1.0, std::numeric_limits<double>::infinity();
  EXPECT_EQ(code_of([&] { ScoringRule r(w); }), ErrorCode::kNonFinite);
}

TEST(RuleEstimate, EmpiricalEqualsProjectionOfRule) {
  oracle::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = oracle::uniform_int(2, 12, rng);
    const std::size_t r = oracle::uniform_int(1, d - 1, rng);
    const Matrix basis = oracle::random_orthogonal(d, rng).leftCols(static_cast<Eigen::Index>(r));
    const Matrix data = oracle::spanning_samples(basis, r + oracle::uniform_int(0, 5, rng), rng);
    const ScoringRule w(oracle::gaussian_vector(d, rng));
    const RuleEstimate est = estimate_rule_empirical_detailed(PeerDataset::observe(data, w));
    EXPECT_EQ(est.observed_rank, r);
    const Vector expected = oracle::projector(basis) * w.weights();
    EXPECT_LT((est.rule.weights() - expected).norm(), 1e-8);

    const SubgroupSpec g = SubgroupSpec::from_data(GroupId::kFirst, CostMatrix::identity(d), data, r);
    EXPECT_LT((estimate_rule_analytic(g, w).weights() - expected).norm(), 1e-8);
  }
}

TEST(RuleEstimate, UnderSpanningPeersSeeASmallerSubspace) {
  Matrix data(3, 3);
  data << 1, 0, 0, 2, 0, 0, -1, 0, 0;
  Vector w(3);
  w << 1, 2, 3;
  const RuleEstimate est = estimate_rule_empirical_detailed(PeerDataset::observe(data, ScoringRule(w)));
  EXPECT_EQ(est.observed_rank, 1u);
  EXPECT_NEAR(est.rule.weights()(0), 1.0, 1e-12);
  EXPECT_NEAR(est.rule.weights().tail(2).norm(), 0.0, 1e-12);
}

TEST(RuleEstimate, Errors) {
  EXPECT_EQ(code_of([] { estimate_rule_empirical(PeerDataset{Matrix(0, 3), Vector(0)}); }),
            ErrorCode::kEmptyPeerSet);
  PeerDataset p = PeerDataset::observe(Matrix::Identity(2, 2), ScoringRule::ones(2));
  p.scores(0) += 1.0;
  EXPECT_THROW(p.check_consistent(ScoringRule::ones(2)), Error);
}

TEST(BestResponse, MovementIsCostWeightedProjection) {
  oracle::Rng rng(41);
  const Matrix a = oracle::random_spd(5, rng);
  const Matrix p = oracle::random_projection(5, 3, rng);
  const SubgroupSpec g(GroupId::kSecond, CostMatrix(a), ProjectionMatrix(p));
  const ScoringRule w(oracle::gaussian_vector(5, rng));
  const Vector x = oracle::gaussian_vector(5, rng);
  EXPECT_LT((movement(g, w) - a.inverse() * p * w.weights()).norm(), 1e-10);
  EXPECT_LT((best_response(x, g, w) - x - movement(g, w)).norm(), 1e-14);
}

TEST(BestResponse, IsStationaryAndBeatsPerturbations) {
  oracle::Rng rng(43);
  const Matrix a = oracle::random_spd(4, rng);
  const Matrix p = oracle::random_projection(4, 2, rng);
  const SubgroupSpec g(GroupId::kFirst, CostMatrix(a), ProjectionMatrix(p));
  const ScoringRule w(oracle::gaussian_vector(4, rng));
  const ScoringRule w_est(p * w.weights());
  const Vector x = oracle::gaussian_vector(4, rng);
  const Vector br = best_response(x, g, w);
  const double best = utility(x, br, g, w_est);
  for (int s = 0; s < 1000; ++s) {
    const Vector z = br + oracle::uniform(1e-4, 1.0, rng) * oracle::unit_vector(4, rng);
    EXPECT_LT(utility(x, z, g, w_est), best);
  }
  // Utility literal: <w_est, z> - 1/2 (z - x)^T A (z - x).
  const Vector z = oracle::gaussian_vector(4, rng);
  EXPECT_NEAR(utility(x, z, g, w_est), w_est.weights().dot(z) - 0.5 * (z - x).dot(a * (z - x)), 1e-12);
}

}  // namespace
