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

// Low-dimensional approximation of the invariant distribution pi = P^T pi of
// a Markov chain: find x with Sigma x = Pi_X(P^T Sigma x), written as
// VI(X, S x) with
//
//   S = Sigma^T (I - P^T) Sigma,   X = {x : Sigma x >= 0, e^T Sigma x = 1}.

#ifndef SVI_PROBLEMS_MARKOV_HPP_
#define SVI_PROBLEMS_MARKOV_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "svi/common.hpp"
#include "svi/problem.hpp"
#include "svi/projector.hpp"
#include "svi/rng.hpp"
#include "svi/sampling.hpp"

namespace svi {

struct MarkovSpec {
  Index n_states = 200;
  Index r_dims = 10;
  std::uint64_t p_seed = 1;
  std::string feature_kind = "sinusoidal";

  static MarkovSpec desk() { return {}; }
  static MarkovSpec full() { return {1000, 20, 1, "sinusoidal"}; }
};

// Row-stochastic P with i.i.d. U[0, 1) entries normalized per row.
inline Matrix markov_transition_matrix(Index n, Rng& rng) {
  Matrix p(n, n);
  for (Index i = 0; i < n; ++i) {
    double sum = 0.0;
    for (Index j = 0; j < n; ++j) {
      p(i, j) = rng.uniform01();
      sum += p(i, j);
    }
    p.row(i) /= sum;
  }
  return p;
}

// Columns sin(j pi (i + 1) / (n + 1)), j = 1..r, orthonormalized.
inline Matrix markov_features(Index n, Index r) {
  if (r < 1 || r > n) throw DomainError("markov: need 1 <= r <= n");
  Matrix raw(n, r);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < r; ++j) {
      raw(i, j) = std::sin(static_cast<double>(j + 1) * std::numbers::pi *
                           static_cast<double>(i + 1) / static_cast<double>(n + 1));
    }
  }
  Eigen::HouseholderQR<Matrix> qr(raw);
  const Matrix rr = qr.matrixQR().topRows(r).triangularView<Eigen::Upper>();
  const double scale = rr.diagonal().cwiseAbs().maxCoeff();
  Matrix q = qr.householderQ() * Matrix::Identity(n, r);
  for (Index j = 0; j < r; ++j) {
    if (!(std::abs(rr(j, j)) > 1e-10 * scale)) throw DomainError("markov: feature matrix is rank deficient");
    if (rr(j, j) < 0) q.col(j) = -q.col(j);
  }
  return q;
}

// X as an explicit polyhedron in R^r.
inline Polyhedron markov_polyhedron(const Matrix& sigma) {
  Polyhedron p;
  p.a_in = -sigma;
  p.b_in = Vector::Zero(sigma.rows());
  p.a_eq = sigma.colwise().sum();
  p.b_eq = Vector::Ones(1);
  return p;
}

// Same X as a Dykstra intersection of the hyperplane and the n halfspaces.
// Far slower than the polyhedral projector; kept for cross-checks.
inline Projector markov_dykstra_set(const Matrix& sigma, double tol = 1e-10,
                                    int max_iters = 20000) {
  DykstraIntersection d;
  d.tol = tol;
  d.max_iters = max_iters;
  d.sets.emplace_back(Hyperplane{sigma.colwise().sum().transpose(), 1.0});
  for (Index i = 0; i < sigma.rows(); ++i) {
    d.sets.emplace_back(Halfspace{-sigma.row(i).transpose(), 0.0});
  }
  return Projector(std::move(d));
}

// Problem for given P (n x n, row-stochastic) and Sigma (n x r).
inline ProblemInstance build_markov_from(const Matrix& p, const Matrix& sigma,
                                         const std::string& id = "markov") {
  const Index n = p.rows();
  if (p.cols() != n) throw DimensionError("markov P", n * n, p.size());
  require_dim("markov Sigma rows", n, sigma.rows());
  for (Index i = 0; i < n; ++i) {
    if ((p.row(i).array() < 0.0).any() || std::abs(p.row(i).sum() - 1.0) > 1e-12) {
      throw DomainError("markov: P must be row-stochastic");
    }
  }
  const Index r = sigma.cols();
  Matrix s = sigma.transpose() * sigma - (p * sigma).transpose() * sigma;
  const double lip = Eigen::JacobiSVD<Matrix>(s).singularValues()(0);

  const Vector e_sigma = sigma.colwise().sum().transpose();
  std::vector<Projector> members;
  members.reserve(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    members.emplace_back(HalfspaceMeetHyperplane{Halfspace{-sigma.row(i).transpose(), 0.0},
                                                 Hyperplane{e_sigma, 1.0}});
  }
  Projector full(markov_polyhedron(sigma));
  ViProblem prob{id,
                 AffineMonotoneMap(std::move(s), Vector::Zero(r)),
                 full,
                 ConstraintFamily(std::move(members), full),
                 lip,
                 std::sqrt(2.0),
                 std::nullopt,
                 std::nullopt};
  return ProblemInstance{std::move(prob), NoNoise{}};
}

inline ProblemInstance build_markov(const MarkovSpec& spec) {
  if (spec.feature_kind != "sinusoidal") {
    throw DomainError("markov: unknown feature kind '" + spec.feature_kind + "'");
  }
  if (spec.r_dims > spec.n_states) throw DomainError("markov: r_dims must be <= n_states");
  Rng rng(spec.p_seed);
  const Matrix p = markov_transition_matrix(spec.n_states, rng);
  const Matrix sigma = markov_features(spec.n_states, spec.r_dims);
  return build_markov_from(p, sigma,
                           "markov-" + std::to_string(spec.n_states) + "x" +
                               std::to_string(spec.r_dims));
}

}  // namespace svi

#endif  // SVI_PROBLEMS_MARKOV_HPP_
