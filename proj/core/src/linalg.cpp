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

#include "infodisc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "infodisc/error.hpp"

namespace infodisc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyData: return "EmptyData";
    case ErrorCode::kRankTooLarge: return "RankTooLarge";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::kZeroObjective: return "ZeroObjective";
    case ErrorCode::kDimMismatch: return "DimMismatch";
    case ErrorCode::kInvalidProjection: return "InvalidProjection";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kEmptyPeerSet: return "EmptyPeerSet";
    case ErrorCode::kDegenerateObjective: return "DegenerateObjective";
    case ErrorCode::kZeroProjectedRule: return "ZeroProjectedRule";
    case ErrorCode::kEpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnmappedCategory: return "UnmappedCategory";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kEmptyGroup: return "EmptyGroup";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kModelValidation: return "ModelValidation";
  }
  return "Unknown";
}

void require_finite(const Eigen::Ref<const Matrix>& m, std::string_view what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::kNonFinite, std::string(what) + ": non-finite entry");
  }
}

double asymmetry(const Eigen::Ref<const Matrix>& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

namespace {

void normalize_sign(Eigen::Ref<Vector> v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // strict comparison keeps the lowest index on ties
    if (std::abs(v(i)) > best_abs) {
      best_abs = std::abs(v(i));
      best = i;
    }
  }
  if (v(best) < 0.0) v = -v;
}

std::size_t count_above_cutoff(const Vector& sigma) {
  if (sigma.size() == 0 || sigma(0) <= 0.0) return 0;
  const double cutoff = tol::kRankCutoff * sigma(0);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++r;
  }
  return r;
}

}  // namespace

SpectralDecomposition spectral_decomposition(const Eigen::Ref<const Matrix>& data) {
  if (data.rows() == 0 || data.cols() == 0) {
    throw Error(ErrorCode::kEmptyData, "spectral_decomposition: empty data matrix");
  }
  require_finite(data, "spectral_decomposition");

  Eigen::JacobiSVD<Matrix> svd(data, Eigen::ComputeThinV);
  SpectralDecomposition out;
  out.singular_values = svd.singularValues();
  out.right_vectors = svd.matrixV();
  for (Eigen::Index j = 0; j < out.right_vectors.cols(); ++j) {
    normalize_sign(out.right_vectors.col(j));
  }
  out.effective_rank = count_above_cutoff(out.singular_values);
  return out;
}

ProjectionMatrix::ProjectionMatrix(Matrix matrix, std::size_t rank)
    : matrix_(std::move(matrix)), rank_(rank) {}

ProjectionMatrix::ProjectionMatrix(Matrix matrix) : matrix_(std::move(matrix)), rank_(0) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw Error(ErrorCode::kInvalidProjection, "projection must be a non-empty square matrix");
  }
  require_finite(matrix_, "projection");
  const auto d = static_cast<double>(matrix_.rows());
  if (asymmetry(matrix_) > tol::kSymmetry) {
    throw Error(ErrorCode::kInvalidProjection, "projection is not symmetric");
  }
  if ((matrix_ * matrix_ - matrix_).norm() > tol::kIdempotence * d) {
    throw Error(ErrorCode::kInvalidProjection, "projection is not idempotent");
  }
  const double trace = matrix_.trace();
  const double rounded = std::round(trace);
  if (std::abs(trace - rounded) > tol::kTrace) {
    throw Error(ErrorCode::kInvalidProjection, "projection trace is not an integer rank");
  }
  rank_ = static_cast<std::size_t>(rounded);
}

ProjectionMatrix ProjectionMatrix::from_orthonormal_basis(const Eigen::Ref<const Matrix>& basis) {
  return ProjectionMatrix(basis * basis.transpose(), static_cast<std::size_t>(basis.cols()));
}

ProjectionMatrix ProjectionMatrix::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return ProjectionMatrix(Matrix::Identity(n, n), dim);
}

ProjectionMatrix ProjectionMatrix::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return ProjectionMatrix(Matrix::Zero(n, n), 0);
}

Vector ProjectionMatrix::apply(const Eigen::Ref<const Vector>& v) const {
  if (v.size() != matrix_.cols()) {
    throw Error(ErrorCode::kDimMismatch, "projection applied to vector of wrong dimension");
  }
  return matrix_ * v;
}

SubspaceProjection subspace_projection(const Eigen::Ref<const Matrix>& data, std::size_t k) {
  if (data.rows() == 0) {
    throw Error(ErrorCode::kEmptyData, "subspace_projection: no rows");
  }
  const auto n = static_cast<std::size_t>(data.rows());
  const auto d = static_cast<std::size_t>(data.cols());
  if (k < 1 || k > std::min(n, d)) {
    std::ostringstream msg;
    msg << "subspace_projection: rank " << k << " outside [1, " << std::min(n, d) << "]";
    throw Error(ErrorCode::kRankTooLarge, msg.str());
  }

  SpectralDecomposition spectrum = spectral_decomposition(data);
  const Vector& sigma = spectrum.singular_values;
  const auto kk = static_cast<Eigen::Index>(k);

  const std::size_t effective = std::min(k, spectrum.effective_rank);
  std::vector<std::string> warnings;
  if (effective < k) {
    std::ostringstream msg;
    msg << "data has only " << effective << " nonzero singular values among the top " << k;
    warnings.push_back(msg.str());
  }
  if (kk < sigma.size() && effective == k &&
      std::abs(sigma(kk - 1) - sigma(kk)) <= tol::kRankCutoff * sigma(0)) {
    warnings.push_back("singular value tie at the rank cutoff; projection is not unique");
  }

  auto basis = spectrum.right_vectors.leftCols(static_cast<Eigen::Index>(effective));
  SubspaceProjection out{ProjectionMatrix::from_orthonormal_basis(basis), std::move(spectrum), k,
                         effective, std::move(warnings)};
  return out;
}

MinNormSolution solve_min_norm(const Eigen::Ref<const Matrix>& x, const Eigen::Ref<const Vector>& y) {
  if (x.rows() == 0) {
    throw Error(ErrorCode::kEmptyData, "min_norm_least_squares: no rows");
  }
  if (y.size() != x.rows()) {
    throw Error(ErrorCode::kShapeMismatch, "min_norm_least_squares: len(y) != rows(X)");
  }
  require_finite(x, "min_norm_least_squares X");
  require_finite(y, "min_norm_least_squares y");

  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = svd.singularValues();
  const std::size_t rank = count_above_cutoff(sigma);
  const auto r = static_cast<Eigen::Index>(rank);

  // w = V_r diag(1/sigma_r) U_r^T y
  Vector coeffs = svd.matrixU().leftCols(r).transpose() * y;
  coeffs.array() /= sigma.head(r).array();
  return {svd.matrixV().leftCols(r) * coeffs, rank};
}

Vector min_norm_least_squares(const Eigen::Ref<const Matrix>& x, const Eigen::Ref<const Vector>& y) {
  return solve_min_norm(x, y).coefficients;
}

Vector maximize_linear_under_quadratic(const Eigen::Ref<const Vector>& c,
                                       const Eigen::Ref<const Matrix>& q, double b) {
  if (q.rows() != q.cols() || q.rows() != c.size()) {
    throw Error(ErrorCode::kDimMismatch, "maximize_linear_under_quadratic: Q must be d x d");
  }
  require_finite(q, "maximize_linear_under_quadratic Q");
  require_finite(c, "maximize_linear_under_quadratic c");
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw Error(ErrorCode::kInvalidArgument, "maximize_linear_under_quadratic: b must be positive");
  }
  if (asymmetry(q) > tol::kSymmetry) {
    throw Error(ErrorCode::kNotPositiveDefinite, "Q is not symmetric");
  }
  Eigen::LLT<Matrix> llt(q);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kNotPositiveDefinite, "Q is not positive definite");
  }
  if (c.norm() <= tol::kZeroNorm) {
    throw Error(ErrorCode::kZeroObjective, "objective vector is zero; maximizer is not unique");
  }
  // KKT: c = lambda Q x with x^T Q x = b gives x = sqrt(b) Q^{-1} c / sqrt(c^T Q^{-1} c).
  const Vector qinv_c = llt.solve(c);
  const double quad = c.dot(qinv_c);
  return std::sqrt(b / quad) * qinv_c;
}

double alignment(const ProjectionMatrix& p1, const ProjectionMatrix& p2, std::size_t n_samples,
                 std::uint64_t seed) {
  if (p1.dim() != p2.dim()) {
    throw Error(ErrorCode::kDimMismatch, "alignment: projections have different dimensions");
  }
  if (n_samples == 0) {
    throw Error(ErrorCode::kInvalidArgument, "alignment: n_samples must be >= 1");
  }
  const auto d = static_cast<Eigen::Index>(p1.dim());
  // <P1 x, P2 x> = x^T (P1^T P2) x
  const Matrix cross = p1.matrix().transpose() * p2.matrix();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector x(d);
  double sum = 0.0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    double norm = 0.0;
    do {
      for (Eigen::Index i = 0; i < d; ++i) x(i) = gauss(rng);
      norm = x.norm();
    } while (norm == 0.0);
    x /= norm;
    sum += x.dot(cross * x);
  }
  return sum / static_cast<double>(n_samples);
}

}  // namespace infodisc
