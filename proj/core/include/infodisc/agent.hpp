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

// The agents' side of the interaction: each subgroup estimates the deployed
// rule from peer scores, then moves its features against a quadratic cost.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Cholesky>

#include "infodisc/linalg.hpp"

namespace infodisc {

/// A linear scoring rule x -> <weights, x>.
class ScoringRule {
 public:
  explicit ScoringRule(Vector weights);

  static ScoringRule zeros(std::size_t dim);
  static ScoringRule ones(std::size_t dim);

  const Vector& weights() const noexcept { return weights_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(weights_.size()); }
  double norm() const { return weights_.norm(); }

 private:
  Vector weights_;
};

/// Symmetric positive definite effort-cost matrix, factorized once.
class CostMatrix {
 public:
  explicit CostMatrix(Matrix matrix);

  static CostMatrix identity(std::size_t dim);
  static CostMatrix scaled_identity(std::size_t dim, double scale);

  const Matrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  /// A^{-1} v via the cached Cholesky factor.
  Vector solve(const Eigen::Ref<const Vector>& v) const;

  /// ||A^{-1}||_2, i.e. 1 / lambda_min(A).
  double inverse_operator_norm() const noexcept { return inverse_norm_; }

 private:
  Matrix matrix_;
  Eigen::LLT<Matrix> llt_;
  double inverse_norm_ = 0.0;
};

enum class GroupId : int { kFirst = 1, kSecond = 2 };

inline int index_of(GroupId g) { return static_cast<int>(g) - 1; }

/// One subgroup: cost matrix, observable subspace and (optionally) the
/// feature rows the subspace was derived from.
class SubgroupSpec {
 public:
  SubgroupSpec(GroupId id, CostMatrix cost, ProjectionMatrix projection);

  /// Derives the projection from the top-`rank` right singular vectors of `data`.
  static SubgroupSpec from_data(GroupId id, CostMatrix cost, Matrix data, std::size_t rank);

  GroupId id() const noexcept { return id_; }
  const CostMatrix& cost() const noexcept { return cost_; }
  const ProjectionMatrix& projection() const noexcept { return projection_; }
  const std::optional<Matrix>& data() const noexcept { return data_; }
  std::size_t dim() const noexcept { return projection_.dim(); }
  std::size_t effective_rank() const noexcept { return projection_.rank(); }
  const std::vector<std::string>& warnings() const noexcept { return warnings_; }

 private:
  GroupId id_;
  CostMatrix cost_;
  ProjectionMatrix projection_;
  std::optional<Matrix> data_;
  std::vector<std::string> warnings_;
};

/// Peer observations: feature rows and the scores the deployed rule gave them.
struct PeerDataset {
  Matrix features;
  Vector scores;

  /// Scores every row of `features` with `rule`.
  static PeerDataset observe(Matrix features, const ScoringRule& rule);

  /// Throws if any score differs from <rule, row> by more than 1e-9.
  void check_consistent(const ScoringRule& rule) const;
};

struct RuleEstimate {
  ScoringRule rule;
  /// Rank of the observed peer features; below the subspace rank when the
  /// peers under-span it.
  std::size_t observed_rank = 0;
};

/// Closed-form estimate: the projection of the deployed rule onto the
/// subgroup's subspace.
ScoringRule estimate_rule_analytic(const SubgroupSpec& g, const ScoringRule& w);

/// Minimum-norm empirical risk minimizer over the peer data.
ScoringRule estimate_rule_empirical(const PeerDataset& peers);
RuleEstimate estimate_rule_empirical_detailed(const PeerDataset& peers);

/// Best-response displacement A_g^{-1} P_g w.
Vector movement(const SubgroupSpec& g, const ScoringRule& w);

/// x + movement(g, w).
Vector best_response(const Eigen::Ref<const Vector>& x, const SubgroupSpec& g,
                     const ScoringRule& w);

/// <w_est, x'> - 1/2 (x' - x)^T A_g (x' - x).
double utility(const Eigen::Ref<const Vector>& x, const Eigen::Ref<const Vector>& x_prime,
               const SubgroupSpec& g, const ScoringRule& w_est);

}  // namespace infodisc
