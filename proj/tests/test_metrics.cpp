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
#include <limits>
#include <vector>

#include "svi/svi.hpp"
#include "test_util.hpp"

namespace svi {
namespace {

using testing::gaussian;
using testing::vec;

ViProblem fixture(SyntheticKind k) {
  Rng rng(0);
  return build_synthetic(k, 2, rng);
}

// max over a grid of X of F(y)^T (x - y). 1-D fixtures use [lo, hi]; 2-D
// fixtures use a square covering X filtered by membership.
double grid_gap(const ViProblem& p, const Vector& x, double h) {
  double best = -std::numeric_limits<double>::infinity();
  auto phi = [&](const Vector& y) { return p.map(y).dot(x - y); };
  if (p.dim() == 1) {
    const double hi = p.id == "nonneg-plus-one" ? 20.0 : (p.id == "interior" ? 10.0 : 3.0);
    for (double t = 0.0; t <= hi + 1e-12; t += h) best = std::max(best, phi(vec({t})));
    return best;
  }
  const double hi = p.id == "skew" ? 1.0 : 2.0;
  const auto n = static_cast<int>(std::llround(hi / h));
  Vector y(2);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      y << i * h, j * h;
      if (p.feasible_set.violation(y) > 1e-12) continue;
      best = std::max(best, phi(y));
    }
  }
  return best;
}

TEST(Gap, AtSolutionIsZero) {
  for (auto k : {SyntheticKind::Interior, SyntheticKind::Boundary, SyntheticKind::Skew,
                 SyntheticKind::Triangle, SyntheticKind::NonnegPlusOne}) {
    const auto p = fixture(k);
    const auto g = gap(p, *p.reference_solution);
    EXPECT_GE(g.value, -1e-9) << p.id;
    EXPECT_LE(g.value, 1e-9) << p.id;
  }
}

TEST(Gap, OneDimensionalCalculus) {
  const auto p = fixture(SyntheticKind::Interior);
  EXPECT_NEAR(gap(p, vec({6})).value, 0.25, 1e-9);
  EXPECT_NEAR(grid_gap(p, vec({6}), 1e-5), 0.25, 1e-8);
}

TEST(Gap, SkewMatchesVertexEnumeration) {
  const auto p = fixture(SyntheticKind::Skew);
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    Vector x(2);
    x << rng.uniform01(), rng.uniform01();
    double best = 0.0;
    for (int m = 0; m < 4; ++m) {
      const Vector v = vec({static_cast<double>(m & 1), static_cast<double>((m >> 1) & 1)});
      best = std::max(best, p.map(v).dot(x - v));
    }
    EXPECT_NEAR(gap(p, x).value, best, 1e-9);
  }
}

TEST(Gap, NonNegativeOnFeasiblePoints) {
  Rng rng(3);
  for (auto k : {SyntheticKind::Interior, SyntheticKind::Skew, SyntheticKind::Triangle}) {
    const auto p = fixture(k);
    for (int t = 0; t < 100; ++t) {
      const Vector x = p.feasible_set.project(gaussian(p.dim(), rng, 3.0));
      const auto g = gap(p, x);
      EXPECT_GE(g.value, -1e-9);
      EXPECT_GE(g.certificate_residual, 0.0);
    }
  }
}

TEST(Gap, AgreesWithGridOnSmallFixtures) {
  Rng rng(4);
  for (auto k : {SyntheticKind::Interior, SyntheticKind::Boundary, SyntheticKind::NonnegPlusOne,
                 SyntheticKind::Skew, SyntheticKind::Triangle}) {
    const auto p = fixture(k);
    for (int t = 0; t < 5; ++t) {
      const Vector x = p.feasible_set.project(gaussian(p.dim(), rng, 2.0) + Vector::Ones(p.dim()));
      const double h = p.dim() == 1 ? 1e-4 : 2e-3;
      EXPECT_NEAR(gap(p, x).value, std::max(0.0, grid_gap(p, x, h)), 1e-2 * h + 1e-3) << p.id;
    }
  }
}

TEST(Gap, Errors) {
  const auto p = fixture(SyntheticKind::Boundary);
  EXPECT_THROW(gap(p, vec({5})), DomainError);
  EXPECT_THROW(gap(p, vec({1, 2})), DimensionError);
}

TEST(ReferenceSolve, Fixtures) {
  auto p = fixture(SyntheticKind::Interior);
  EXPECT_NEAR(reference_solve(p)[0], 5.0, 1e-9);
  // X = Nonneg ∩ {y <= 3}.
  DykstraIntersection d;
  d.sets = {Projector(Nonneg{1}), Projector(Halfspace{vec({1}), 3.0})};
  ViProblem q{"capped", AffineMonotoneMap(Matrix::Identity(1, 1), vec({-5})), Projector(d),
              std::nullopt, 1.0, 3.0, std::nullopt, std::nullopt};
  EXPECT_NEAR(reference_solve(q)[0], 3.0, 1e-9);
}

TEST(ReferenceSolve, MarkovSelfConsistent) {
  const auto inst = build_markov(MarkovSpec{50, 5, 1, "sinusoidal"});
  ReferenceOptions ro;
  ro.tol = 1e-10;
  const Vector xs = reference_solve(inst.problem, ro);
  EXPECT_LE(natural_residual(inst.problem, xs, 0.9 / inst.problem.lipschitz), ro.tol);
  EXPECT_LE(gap(inst.problem, xs).value, 10 * ro.tol);
}

TEST(ReferenceSolve, IterationCapThrows) {
  auto p = fixture(SyntheticKind::Skew);
  EXPECT_THROW(reference_solve(p, 1e-14, 3), ConvergenceError);
}

TEST(UniformAverage, Examples) {
  EXPECT_EQ(finalize_uniform_average(vec({3, 4}), 1), vec({3, 4}));
  EXPECT_EQ(finalize_uniform_average(vec({2, 4}), 2), vec({1, 2}));
  EXPECT_EQ(finalize_uniform_average(vec({6, 6}) * 3, 3), vec({6, 6}));
  EXPECT_THROW(finalize_uniform_average(vec({0}), 0), DomainError);
}

TEST(WindowAverage, Examples) {
  Projector box(Box{vec({0, 0}), vec({1, 1})});
  EXPECT_EQ(finalize_window_average(box, {{0.3, vec({2, 0.5})}}), vec({1, 0.5}));
  const Vector m = finalize_window_average(box, {{0.2, vec({0, 0})}, {0.2, vec({1, 1})}});
  EXPECT_NEAR((m - vec({0.5, 0.5})).norm(), 0.0, 1e-15);
  std::vector<std::pair<double, Vector>> w;
  for (int k = 4; k <= 8; ++k) w.emplace_back(1.0 / std::sqrt(k), vec({0.25, 0.75}));
  EXPECT_NEAR((finalize_window_average(box, w) - vec({0.25, 0.75})).norm(), 0.0, 1e-15);
  EXPECT_THROW(finalize_window_average(box, {}), DomainError);
}

TEST(WindowAverage, BoundsAndReadiness) {
  EXPECT_EQ(WindowAverager::window_begin(1, 0), 1);
  EXPECT_EQ(WindowAverager::window_begin(10, 3), 8);
  EXPECT_EQ(WindowAverager::window_end(10, 3), 13);
  Projector box(Box{vec({0}), vec({1})});
  WindowAverager avg(box, {4}, 0, false);
  for (int s = 1; s <= 3; ++s) avg.push(s, 1.0, vec({0.5}));
  EXPECT_FALSE(avg.ready(4));
  EXPECT_THROW(avg.finalize(4), DomainError);
  avg.push(4, 1.0, vec({3.0}));
  EXPECT_THROW(avg.push(4, 1.0, vec({0.0})), DomainError);
  // Window [2, 4]: 0.5, 0.5 and Pi(3) = 1.
  const auto r = avg.finalize(4);
  EXPECT_NEAR(r.projected[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.raw[0], 4.0 / 3.0, 1e-15);
}

TEST(WindowAverage, PrunesPointsOutsidePendingWindows) {
  Projector box(Box{vec({0}), vec({1})});
  WindowAverager avg(box, {10, 100}, 0, true);
  for (int s = 1; s <= 100; ++s) {
    avg.push(s, 1.0, vec({0.1 * s}));
    if (s == 10) avg.finalize(10);
  }
  EXPECT_EQ(avg.stored(), 51u);
  EXPECT_EQ(avg.projections(), 6 + 51);
}

TEST(AveragedFeasibility, FinalizedPointsInSet) {
  auto inst = build_cournot(CournotSpec::defaults());
  RunOptions opt;
  opt.iterations = 100;
  opt.compute_gap = false;
  Rng rng(1);
  const auto rec = run(inst, SolverKind::V_SSE, rng, opt);
  for (const auto& r : rec.rows) EXPECT_LE(r.dist_x_avg, 1e-6);
}

TEST(SlopeFit, PowerLaws) {
  auto fit = [](auto f) {
    std::vector<std::pair<double, double>> rows;
    for (double k : {10.0, 100.0, 1000.0}) rows.emplace_back(k, f(k));
    return fit_loglog_slope(rows);
  };
  EXPECT_NEAR(fit([](double k) { return 100.0 / k; }).slope, -1.0, 1e-12);
  EXPECT_NEAR(fit([](double k) { return 5.0 / std::sqrt(k); }).slope, -0.5, 1e-12);
  EXPECT_NEAR(fit([](double) { return 3.0; }).slope, 0.0, 1e-12);
  EXPECT_NEAR(fit([](double k) { return 100.0 / k; }).r2, 1.0, 1e-12);
  EXPECT_THROW(fit_loglog_slope({{1, 1}, {2, 0}, {3, 1}}), DomainError);
  EXPECT_THROW(fit_loglog_slope({{1, 1}, {2, 1}}), DomainError);
}

}  // namespace
}  // namespace svi
