// Copyright 2026 The svi Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SVI_AFFINE_MAP_HPP_
#define SVI_AFFINE_MAP_HPP_

#include <algorithm>
#include <cmath>
#include <utility>

#include <Eigen/Eigenvalues>

#include "svi/common.hpp"
#include "svi/rng.hpp"

namespace svi {

// F(x) = M x + d with no structural checks beyond shape. Used where a
// possibly non-monotone map must be representable, e.g. to test
// check_monotone itself.
class AffineMap {
 public:
  AffineMap(Matrix matrix, Vector offset)
      : matrix_(std::move(matrix)), offset_(std::move(offset)) {
    if (matrix_.rows() != matrix_.cols()) {
      throw DimensionError("AffineMap matrix must be square", matrix_.rows(),
                           matrix_.cols());
    }
    require_dim("AffineMap offset", matrix_.rows(), offset_.size());
  }

  Index dim() const { return matrix_.rows(); }
  const Matrix& matrix() const { return matrix_; }
  const Vector& offset() const { return offset_; }

  Vector operator()(const Vector& x) const {
    require_dim("evaluate_map", dim(), x.size());
    return matrix_ * x + offset_;
  }

 private:
  Matrix matrix_;
  Vector offset_;
};

// Smallest eigenvalue of (M + M^T) / 2.
inline double min_symmetric_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline double max_symmetric_eigenvalue(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

// Relative slack used by the monotonicity test of the symmetric part.
inline constexpr double kMonotoneTolerance = 1e-9;

inline bool symmetric_part_is_psd(const Matrix& m) {
  if (m.size() == 0) return true;
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  return lo >= -kMonotoneTolerance * scale;
}

// An affine map whose symmetric part is positive semidefinite, i.e. a
// monotone map. Construction fails otherwise.
class AffineMonotoneMap {
 public:
  AffineMonotoneMap(Matrix matrix, Vector offset)
      : map_(std::move(matrix), std::move(offset)) {
    if (!map_.matrix().allFinite() || !map_.offset().allFinite()) {
      throw DomainError("AffineMonotoneMap: non-finite entries");
    }
    if (!symmetric_part_is_psd(map_.matrix())) {
      throw DomainError(
          "AffineMonotoneMap: symmetric part is not positive semidefinite "
          "(min eigenvalue " +
          std::to_string(min_symmetric_eigenvalue(map_.matrix())) + ")");
    }
  }

  Index dim() const { return map_.dim(); }
  const Matrix& matrix() const { return map_.matrix(); }
  const Vector& offset() const { return map_.offset(); }
  const AffineMap& affine() const { return map_; }

  Vector operator()(const Vector& x) const { return map_(x); }

 private:
  AffineMap map_;
};

inline Vector evaluate_map(const AffineMap& map, const Vector& x) { return map(x); }
inline Vector evaluate_map(const AffineMonotoneMap& map, const Vector& x) {
  return map(x);
}

// Power iteration on M^T M for the spectral norm of M. Restarts from a
// fresh direction whenever the iterate collapses into the null space.
inline double estimate_lipschitz(const AffineMap& map, int iters = 1000,
                                 double tol = 1e-10) {
  if (iters < 1) throw DomainError("estimate_lipschitz: iters must be >= 1");
  const Matrix& m = map.matrix();
  if (!m.allFinite()) throw DomainError("estimate_lipschitz: non-finite matrix");
  const Index n = m.cols();
  if (n == 0) return 0.0;
  if (m.cwiseAbs().maxCoeff() == 0.0) return 0.0;

  Rng rng(0x5eed);
  Vector v = Vector::Ones(n) / std::sqrt(static_cast<double>(n));
  double sigma = 0.0;
  int stagnant_restarts = 0;
  for (int it = 0; it < iters; ++it) {
    Vector w = m.transpose() * (m * v);
    const double norm_w = w.norm();
    if (norm_w == 0.0) {
      if (++stagnant_restarts > 16) break;
      for (Index i = 0; i < n; ++i) v[i] = rng.normal();
      v.normalize();
      continue;
    }
    const double next = std::sqrt(norm_w);
    v = w / norm_w;
    if (it > 0 && std::abs(next - sigma) <= 0.1 * tol * next) {
      sigma = next;
      break;
    }
    sigma = next;
  }
  // Both estimates are lower bounds on ||M||_2.
  return std::max(sigma, (m * v).norm());
}

inline double estimate_lipschitz(const AffineMonotoneMap& map, int iters = 1000,
                                 double tol = 1e-10) {
  return estimate_lipschitz(map.affine(), iters, tol);
}

// Sampled monotonicity test plus the eigenvalue test on the symmetric part.
inline bool check_monotone(const AffineMap& map, int trials, Rng& rng) {
  if (trials < 1) throw DomainError("check_monotone: trials must be >= 1");
  const Index n = map.dim();
  Vector x(n), y(n);
  for (int t = 0; t < trials; ++t) {
    for (Index i = 0; i < n; ++i) {
      x[i] = rng.normal();
      y[i] = rng.normal();
    }
    const Vector diff = x - y;
    const double inner = (map(x) - map(y)).dot(diff);
    if (inner < -1e-9 * (1.0 + diff.squaredNorm())) return false;
  }
  return symmetric_part_is_psd(map.matrix());
}

inline bool check_monotone(const AffineMonotoneMap& map, int trials, Rng& rng) {
  return check_monotone(map.affine(), trials, rng);
}

}  // namespace svi

#endif  // SVI_AFFINE_MAP_HPP_
