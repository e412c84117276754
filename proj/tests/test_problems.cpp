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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "svi/svi.hpp"
#include "test_util.hpp"

namespace svi {
namespace {

using testing::gaussian;
using testing::vec;

TEST(Cournot, Lipschitz) {
  const auto inst = build_cournot(CournotSpec::defaults());
  EXPECT_EQ(inst.problem.dim(), 40);
  EXPECT_NEAR(inst.problem.lipschitz, 0.3, 1e-12);
  EXPECT_NEAR(estimate_lipschitz(inst.problem.map), 0.3, 1e-6);
  const auto one = build_cournot(CournotSpec::defaults(1, 1));
  EXPECT_NEAR(one.problem.lipschitz, 0.1, 1e-12);
  EXPECT_NEAR(estimate_lipschitz(one.problem.map), 0.1, 1e-6);
}

TEST(Cournot, ZeroIsFeasibleAndSetIsBounded) {
  const auto spec = CournotSpec::defaults();
  const auto inst = build_cournot(spec);
  EXPECT_TRUE(inst.problem.feasible_set.contains(Vector::Zero(40), 1e-12));
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const Vector y = inst.problem.feasible_set.project(gaussian(40, rng, 1e4));
    for (int i = 0; i < spec.n_firms; ++i) {
      double sales = 0.0;
      for (int j = 0; j < spec.n_nodes; ++j) {
        const double q = y[cournot_q_index(spec, i, j)];
        EXPECT_GE(q, -1e-8);
        EXPECT_LE(q, 300.0 + 1e-8);
        EXPECT_GE(y[cournot_s_index(spec, i, j)], -1e-8);
        sales += y[cournot_s_index(spec, i, j)];
      }
      EXPECT_LE(sales, 1200.0 + 1e-6);
    }
    EXPECT_LE(y.norm(), *inst.problem.diameter_bound);
  }
}

TEST(Cournot, MapBoundedOnX) {
  const auto inst = build_cournot(CournotSpec::defaults());
  Rng rng(2);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Vector y = inst.problem.feasible_set.project(gaussian(40, rng, 500.0));
    worst = std::max(worst, inst.problem.map(y).norm());
  }
  // |F| <= L D + |F(0)| on X.
  const double bound =
      0.3 * *inst.problem.diameter_bound + inst.problem.map(Vector::Zero(40)).norm();
  EXPECT_LE(worst, bound);
}

// Projection onto {a.z = 0} cap [lo, hi] via the multiplier: z(l) = clamp(p - l a)
// and a.z(l) is non-increasing in l.
Vector project_by_bisection(const Vector& p, const Vector& a, const Vector& lo, const Vector& hi) {
  auto z = [&](double l) {
    return Vector((p - l * a).cwiseMax(lo).cwiseMin(hi));
  };
  double l0 = -1e6;
  double l1 = 1e6;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (l0 + l1);
    if (a.dot(z(mid)) > 0) l0 = mid; else l1 = mid;
  }
  return z(0.5 * (l0 + l1));
}

TEST(Cournot, FirmProjectionMatchesMultiplierSearch) {
  auto spec = CournotSpec::defaults(1, 2);
  spec.cap << 3.0, 5.0;
  const Projector set = cournot_firm_set(spec, 0);
  const Vector a = vec({-1, -1, 1, 1});
  const Vector lo = Vector::Zero(4);
  const Vector hi = vec({1e9, 1e9, 3, 5});
  Rng rng(3);
  for (int t = 0; t < 100; ++t) {
    const Vector p = gaussian(4, rng, 4.0);
    EXPECT_LE((set.project(p) - project_by_bisection(p, a, lo, hi)).norm(), 1e-6);
  }
}

TEST(Cournot, ReferenceSolutionIsSymmetric) {
  auto inst = build_cournot(CournotSpec::defaults());
  ReferenceOptions ro;
  ro.tol = 1e-9;
  ro.max_iters = 2000000;
  const Vector xs = reference_solve(inst.problem, ro);
  // Symmetric firms: every firm sells the same amount at every node.
  for (Index i = 1; i < 20; ++i) EXPECT_NEAR(xs[i], xs[0], 1e-5);
  EXPECT_LE(gap(inst.problem, xs).value, 1e-4);
}

TEST(Cournot, NoiseSharedPerNode) {
  const auto spec = CournotSpec::defaults();
  const auto inst = build_cournot(spec);
  const auto* u = std::get_if<AdditiveUniform>(&inst.noise);
  ASSERT_NE(u, nullptr);
  Rng rng(4);
  const Vector w = draw_noise(inst.noise, Vector::Zero(40), rng);
  for (int j = 0; j < spec.n_nodes; ++j) {
    for (int i = 0; i < spec.n_firms; ++i) {
      EXPECT_EQ(w[cournot_s_index(spec, i, j)], w[cournot_s_index(spec, 0, j)]);
      EXPECT_EQ(w[cournot_q_index(spec, i, j)], 0.0);
    }
    EXPECT_LE(std::abs(w[cournot_s_index(spec, 0, j)]), 0.5);
  }
}

TEST(Cournot, InvalidSpecs) {
  auto spec = CournotSpec::defaults();
  spec.b[0] = 0.0;
  EXPECT_THROW(build_cournot(spec), DomainError);
  spec = CournotSpec::defaults();
  spec.cap.resize(1, 1);
  EXPECT_THROW(build_cournot(spec), DimensionError);
  EXPECT_THROW(CournotSpec::defaults(0, 2), DomainError);
}

TEST(Markov, TransitionMatrixIsStochastic) {
  Rng rng(1);
  const Matrix p = markov_transition_matrix(50, rng);
  EXPECT_GE(p.minCoeff(), 0.0);
  for (Index i = 0; i < 50; ++i) EXPECT_NEAR(p.row(i).sum(), 1.0, 1e-12);
}

TEST(Markov, FeaturesOrthonormal) {
  const Matrix s = markov_features(200, 10);
  EXPECT_LE((s.transpose() * s - Matrix::Identity(10, 10)).norm(), 1e-12);
  EXPECT_THROW(markov_features(3, 4), DomainError);
}

TEST(Markov, DeskInstance) {
  const auto a = build_markov(MarkovSpec::desk());
  const auto b = build_markov(MarkovSpec::desk());
  EXPECT_EQ(a.problem.dim(), 10);
  EXPECT_EQ(a.problem.lipschitz, b.problem.lipschitz);
  EXPECT_EQ(a.problem.map.matrix(), b.problem.map.matrix());
  EXPECT_NEAR(a.problem.lipschitz, estimate_lipschitz(a.problem.map), 1e-6);
  EXPECT_NEAR(*a.problem.diameter_bound, std::sqrt(2.0), 0.0);
  EXPECT_EQ(a.problem.constraint_family->size(), 200u);
}

TEST(Markov, MembersContainX) {
  const auto inst = build_markov(MarkovSpec{40, 4, 2, "sinusoidal"});
  const auto& fam = *inst.problem.constraint_family;
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const Vector x = inst.problem.feasible_set.project(gaussian(4, rng, 2.0));
    for (std::size_t i = 0; i < fam.size(); ++i) EXPECT_LE(fam.member(i).violation(x), 1e-9);
  }
}

TEST(Markov, PolyhedronMatchesDykstra) {
  Rng rng(6);
  const Matrix p = markov_transition_matrix(30, rng);
  const Matrix sigma = markov_features(30, 3);
  const auto inst = build_markov_from(p, sigma);
  const Projector slow = markov_dykstra_set(sigma, 1e-12, 200000);
  for (int t = 0; t < 10; ++t) {
    const Vector y = gaussian(3, rng, 1.0);
    EXPECT_LE((inst.problem.feasible_set.project(y) - slow.project(y)).norm(), 1e-6);
  }
}

TEST(Markov, IdentityChainHasZeroGap) {
  const auto inst = build_markov_from(Matrix::Identity(3, 3), Matrix::Identity(3, 3));
  EXPECT_EQ(inst.problem.map.matrix(), Matrix::Zero(3, 3));
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    const Vector x = inst.problem.feasible_set.project(gaussian(3, rng, 1.0));
    EXPECT_NEAR(gap(inst.problem, x).value, 0.0, 1e-12);
  }
}

TEST(Markov, MonotoneOverSeeds) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = build_markov(MarkovSpec{60, 5, seed, "sinusoidal"});
    const Matrix& s = inst.problem.map.matrix();
    const Matrix sym = 0.5 * (s + s.transpose());
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Matrix>(sym).eigenvalues().minCoeff(), -1e-8)
        << "seed " << seed;
  }
}

TEST(Markov, RejectsNonStochastic) {
  Matrix p = Matrix::Identity(3, 3);
  p(0, 0) = 0.5;
  EXPECT_THROW(build_markov_from(p, Matrix::Identity(3, 3)), DomainError);
  EXPECT_THROW(build_markov(MarkovSpec{10, 3, 1, "haar"}), DomainError);
}

TEST(Synthetic, KnownSolutions) {
  Rng rng(0);
  for (auto k : {SyntheticKind::Interior, SyntheticKind::Boundary, SyntheticKind::Skew,
                 SyntheticKind::NonnegPlusOne, SyntheticKind::Triangle}) {
    const auto p = build_synthetic(k, 2, rng);
    EXPECT_NO_THROW(validate_problem(p));
    const Vector& xs = *p.reference_solution;
    EXPECT_TRUE(p.feasible_set.contains(xs, 1e-12)) << p.id;
    // Fixed point of the projected step.
    EXPECT_LE(natural_residual(p, xs, 0.5), 1e-14) << p.id;
  }
  EXPECT_THROW(synthetic_kind_from_string("nope"), ConfigError);
}

TEST(Synthetic, RandomIsMonotone) {
  Rng rng(9);
  const auto p = build_synthetic(SyntheticKind::Random, 6, rng);
  Rng probe(10);
  EXPECT_TRUE(check_monotone(p.map, 200, probe));
}

}  // namespace
}  // namespace svi
