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

#include "infodisc/agent.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

#include "infodisc/error.hpp"

namespace infodisc {

namespace {

void require_dim(std::size_t expected, Eigen::Index actual, const char* what) {
  if (static_cast<Eigen::Index>(expected) != actual) {
    std::ostringstream msg;
    msg << what << ": expected dimension " << expected << ", got " << actual;
    throw Error(ErrorCode::kDimMismatch, msg.str());
  }
}

}  // namespace

ScoringRule::ScoringRule(Vector weights) : weights_(std::move(weights)) {
  require_finite(weights_, "scoring rule");
}

ScoringRule ScoringRule::zeros(std::size_t dim) {
  return ScoringRule(Vector::Zero(static_cast<Eigen::Index>(dim)));
}

ScoringRule ScoringRule::ones(std::size_t dim) {
  return ScoringRule(Vector::Ones(static_cast<Eigen::Index>(dim)));
}

CostMatrix::CostMatrix(Matrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) {
    throw Error(ErrorCode::kNotPositiveDefinite, "cost matrix must be square and non-empty");
  }
  require_finite(matrix_, "cost matrix");
  if (asymmetry(matrix_) > tol::kSymmetry) {
    throw Error(ErrorCode::kNotPositiveDefinite, "cost matrix is not symmetric");
  }
  llt_.compute(matrix_);
  if (llt_.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotPositiveDefinite, "cost matrix is not positive definite");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(matrix_, Eigen::EigenvaluesOnly);
  const double lambda_min = eig.eigenvalues().minCoeff();
  if (!(lambda_min > 0.0)) {
    throw Error(ErrorCode::kNotPositiveDefinite, "cost matrix is not positive definite");
  }
  inverse_norm_ = 1.0 / lambda_min;
}

CostMatrix CostMatrix::identity(std::size_t dim) { return scaled_identity(dim, 1.0); }

CostMatrix CostMatrix::scaled_identity(std::size_t dim, double scale) {
  const auto n = static_cast<Eigen::Index>(dim);
  return CostMatrix(scale * Matrix::Identity(n, n));
}

Vector CostMatrix::solve(const Eigen::Ref<const Vector>& v) const {
  require_dim(dim(), v.size(), "cost solve");
  return llt_.solve(v);
}

SubgroupSpec::SubgroupSpec(GroupId id, CostMatrix cost, ProjectionMatrix projection)
    : id_(id), cost_(std::move(cost)), projection_(std::move(projection)) {
  require_dim(cost_.dim(), projection_.matrix().rows(), "subgroup projection");
}

SubgroupSpec SubgroupSpec::from_data(GroupId id, CostMatrix cost, Matrix data, std::size_t rank) {
  require_dim(cost.dim(), data.cols(), "subgroup data");
  SubspaceProjection sp = subspace_projection(data, rank);
  SubgroupSpec out(id, std::move(cost), std::move(sp.projection));
  out.data_ = std::move(data);
  out.warnings_ = std::move(sp.warnings);
  return out;
}

PeerDataset PeerDataset::observe(Matrix features, const ScoringRule& rule) {
  require_dim(rule.dim(), features.cols(), "peer features");
  Vector scores = features * rule.weights();
  return PeerDataset{std::move(features), std::move(scores)};
}

void PeerDataset::check_consistent(const ScoringRule& rule) const {
  require_dim(rule.dim(), features.cols(), "peer features");
  if (scores.size() != features.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "peer scores and features differ in length");
  }
  const double worst = (features * rule.weights() - scores).cwiseAbs().maxCoeff();
  if (worst > 1e-9) {
    std::ostringstream msg;
    msg << "peer scores disagree with the deployed rule by " << worst;
    throw Error(ErrorCode::kShapeMismatch, msg.str());
  }
}

ScoringRule estimate_rule_analytic(const SubgroupSpec& g, const ScoringRule& w) {
  require_dim(g.dim(), w.weights().size(), "estimate_rule_analytic");
  return ScoringRule(g.projection().apply(w.weights()));
}

RuleEstimate estimate_rule_empirical_detailed(const PeerDataset& peers) {
  if (peers.features.rows() == 0) {
    throw Error(ErrorCode::kEmptyPeerSet, "estimate_rule_empirical: no peer observations");
  }
  MinNormSolution sol = solve_min_norm(peers.features, peers.scores);
  return RuleEstimate{ScoringRule(std::move(sol.coefficients)), sol.rank};
}

ScoringRule estimate_rule_empirical(const PeerDataset& peers) {
  return estimate_rule_empirical_detailed(peers).rule;
}

Vector movement(const SubgroupSpec& g, const ScoringRule& w) {
  require_dim(g.dim(), w.weights().size(), "movement");
  return g.cost().solve(g.projection().apply(w.weights()));
}

Vector best_response(const Eigen::Ref<const Vector>& x, const SubgroupSpec& g,
                     const ScoringRule& w) {
  require_dim(g.dim(), x.size(), "best_response");
  return x + movement(g, w);
}

double utility(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& x_prime,
               const SubgroupSpec& g, const ScoringRule& w_est) {
  require_dim(g.dim(), x.size(), "utility x");
  require_dim(g.dim(), x_prime.size(), "utility x'");
  require_dim(g.dim(), w_est.weights().size(), "utility w_est");
  const Vector step = x_prime - x;
  return w_est.weights().dot(x_prime) - 0.5 * step.dot(g.cost().matrix() * step);
}

}  // namespace infodisc
