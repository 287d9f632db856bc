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

// Linear-algebra primitives shared by every other module: truncated-SVD
// subspace projections, minimum-norm least squares and the maximizer of a
// linear objective over an ellipsoid.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace infodisc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

namespace tol {
/// Singular values below kRankCutoff * sigma_max count as zero.
inline constexpr double kRankCutoff = 1e-10;
inline constexpr double kSymmetry = 1e-10;
inline constexpr double kIdempotence = 1e-9;  // scaled by dim
inline constexpr double kTrace = 1e-8;
/// Norms at or below this are treated as zero vectors.
inline constexpr double kZeroNorm = 1e-12;
}  // namespace tol

/// Throws Error(kNonFinite) naming `what` if any entry is NaN or infinite.
void require_finite(const Eigen::Ref<const Matrix>& m, std::string_view what);

/// Largest absolute asymmetry |m(i,j) - m(j,i)|; m must be square.
double asymmetry(const Eigen::Ref<const Matrix>& m);

/// Right singular structure of a data matrix.
///
/// `right_vectors` holds min(n, d) orthonormal columns ordered by
/// non-increasing singular value. Each column is sign-normalized so that its
/// largest-magnitude entry is positive (ties go to the lowest index).
struct SpectralDecomposition {
  Vector singular_values;
  Matrix right_vectors;
  std::size_t effective_rank = 0;
};

SpectralDecomposition spectral_decomposition(const Eigen::Ref<const Matrix>& data);

/// Orthogonal projection onto a subspace of R^d.
///
/// Construction validates symmetry, idempotence and that the trace matches
/// the rank; instances are immutable afterwards.
class ProjectionMatrix {
 public:
  /// Validates `matrix` as an orthogonal projection (rank taken from its trace).
  explicit ProjectionMatrix(Matrix matrix);

  /// Builds B B^T from a d x k matrix with orthonormal columns.
  static ProjectionMatrix from_orthonormal_basis(const Eigen::Ref<const Matrix>& basis);
  static ProjectionMatrix identity(std::size_t dim);
  static ProjectionMatrix zero(std::size_t dim);

  const Matrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
  std::size_t rank() const noexcept { return rank_; }

  Vector apply(const Eigen::Ref<const Vector>& v) const;

 private:
  ProjectionMatrix(Matrix matrix, std::size_t rank);

  Matrix matrix_;
  std::size_t rank_;
};

struct SubspaceProjection {
  ProjectionMatrix projection;
  SpectralDecomposition spectrum;
  std::size_t requested_rank = 0;
  /// Number of the top `requested_rank` singular values above the cutoff.
  std::size_t effective_rank = 0;
  std::vector<std::string> warnings;
};

/// Projection onto the span of the top-k right singular vectors of `data`
/// (rows are samples).
SubspaceProjection subspace_projection(const Eigen::Ref<const Matrix>& data, std::size_t k);

struct MinNormSolution {
  Vector coefficients;
  std::size_t rank = 0;
};

/// Minimum-norm minimizer of ||X w - y||^2 together with the numerical rank of X.
MinNormSolution solve_min_norm(const Eigen::Ref<const Matrix>& x, const Eigen::Ref<const Vector>& y);

Vector min_norm_least_squares(const Eigen::Ref<const Matrix>& x, const Eigen::Ref<const Vector>& y);

/// Unique maximizer of c^T x subject to x^T Q x <= b, for symmetric positive
/// definite Q and nonzero c. The constraint is active at the solution.
Vector maximize_linear_under_quadratic(const Eigen::Ref<const Vector>& c,
                                       const Eigen::Ref<const Matrix>& q, double b);

/// Mean of <P1 x, P2 x> over `n_samples` unit vectors drawn uniformly from
/// the sphere with a generator seeded by `seed`.
double alignment(const ProjectionMatrix& p1, const ProjectionMatrix& p2,
                 std::size_t n_samples, std::uint64_t seed);

}  // namespace infodisc
