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

#include "svi/experiment/report.hpp"
#include "svi/svi.hpp"
#include "test_util.hpp"

namespace svi {
namespace {

using testing::gaussian;
using testing::points_in;
using testing::vec;

ViProblem interior() {
  Rng rng(0);
  return build_synthetic(SyntheticKind::Interior, 1, rng);
}

// Independent scalar loops for X = [0, 10], F(x) = x - 5.
double clamp10(double v) { return std::clamp(v, 0.0, 10.0); }

TEST(StepVSprg, HandIteration) {
  const auto p = interior();
  StochasticOracle o(p.map, NoNoise{});
  Rng rng(1);
  auto s = init_state(p, vec({0}));
  step_v_sprg(s, p, o, 0.1, 1, rng);
  EXPECT_DOUBLE_EQ(s.x_curr[0], 0.5);
  step_v_sprg(s, p, o, 0.1, 1, rng);
  EXPECT_DOUBLE_EQ(s.x_curr[0], 0.9);
  // Scripted loop for 50 more steps.
  double x = 0.9, xp = 0.5;
  for (int k = 0; k < 50; ++k) {
    step_v_sprg(s, p, o, 0.1, 1, rng);
    const double nx = clamp10(x - 0.1 * ((2 * x - xp) - 5));
    xp = x;
    x = nx;
    EXPECT_NEAR(s.x_curr[0], x, 1e-14);
  }
}

TEST(StepVSse, HandIteration) {
  const auto p = interior();
  StochasticOracle o(p.map, NoNoise{});
  Rng rng(1);
  auto s = init_state(p, vec({0}));
  step_v_sse(s, p, o, 0.1, 1, rng);
  EXPECT_DOUBLE_EQ(s.x_half->coeff(0), 0.5);
  EXPECT_DOUBLE_EQ(s.x_curr[0], 0.45);
}

TEST(StepVSse, ActiveHalfspace) {
  Rng r0(0);
  const auto p = build_synthetic(SyntheticKind::NonnegPlusOne, 1, r0);
  StochasticOracle o(p.map, NoNoise{});
  Rng rng(1);
  auto s = init_state(p, vec({0}));
  step_v_sse(s, p, o, 0.1, 1, rng);
  EXPECT_EQ(s.x_half->coeff(0), 0.0);
  EXPECT_EQ(s.x_curr[0], 0.0);
}

TEST(StepSeg, HandIterationAndCount) {
  const auto p = interior();
  StochasticOracle o(p.map, NoNoise{});
  Rng rng(1);
  auto s = init_state(p, vec({0}));
  step_seg(s, p, o, 0.1, 1, rng);
  EXPECT_DOUBLE_EQ(s.x_half->coeff(0), 0.5);
  EXPECT_DOUBLE_EQ(s.x_curr[0], 0.45);
  for (int k = 1; k < 25; ++k) step_seg(s, p, o, 0.1, 1, rng);
  EXPECT_EQ(s.counters.projections_full, 50);
}

TEST(FixedPoint, EverySchemeStationaryAtSolution) {
  Rng r0(0);
  for (auto kind_p : {SyntheticKind::Interior, SyntheticKind::Boundary, SyntheticKind::Skew,
                      SyntheticKind::Triangle}) {
    const auto p = build_synthetic(kind_p, 2, r0);
    for (SolverKind k : kAllSolverKinds) {
      // A single member of a larger family need not keep x* fixed.
      if (is_random_projection(k) && p.constraint_family->size() > 1) continue;
      StochasticOracle o(p.map, NoNoise{});
      Rng rng(2);
      auto s = init_state(p, p.reference_solution);
      for (int i = 0; i < 20; ++i) {
        const Vector before = s.x_curr;
        step(k, s, p, o, 0.1, 3, rng);
        EXPECT_LE((s.x_curr - before).norm(), 1e-12) << to_string(k) << " on " << p.id;
      }
    }
  }
}

// Deterministic projected reflected gradient and subgradient extragradient,
// written out directly.
struct Deterministic {
  const ViProblem& p;
  Vector prg_step(const Vector& x, const Vector& xp, double g) const {
    const Vector y = 2.0 * x - xp;
    const Vector f = p.map.matrix() * y + p.map.offset();
    return p.feasible_set.project(x - g * f);
  }
  Vector se_step(const Vector& x, double g) const {
    const Vector f1 = p.map.matrix() * x + p.map.offset();
    const Vector z = x - g * f1;
    const Vector h = p.feasible_set.project(z);
    const Vector c = z - h;
    const Vector f2 = p.map.matrix() * h + p.map.offset();
    return project_halfspace_closed_form(c, c.dot(h), x - g * f2);
  }
};

TEST(Reduction, VariantsWithoutNoiseMatchDeterministic) {
  Rng r0(5);
  for (auto kind_p : {SyntheticKind::Random, SyntheticKind::Triangle, SyntheticKind::Skew}) {
    const auto p = build_synthetic(kind_p, 4, r0);
    const Deterministic det{p};
    StochasticOracle o(p.map, NoNoise{});
    Rng rng(3);
    const Vector x0 = p.feasible_set.project(gaussian(p.dim(), rng, 2.0));
    auto a = init_state(p, x0);
    auto b = init_state(p, x0);
    Vector x = x0, xp = x0, y = x0;
    for (int k = 0; k < 100; ++k) {
      step_v_sprg(a, p, o, 0.1, 1, rng);
      step_v_sse(b, p, o, 0.1, 1, rng);
      const Vector nx = det.prg_step(x, xp, 0.1);
      xp = x;
      x = nx;
      y = det.se_step(y, 0.1);
      ASSERT_EQ(a.x_curr, x) << p.id << " step " << k;
      ASSERT_EQ(b.x_curr, y) << p.id << " step " << k;
    }
  }
}

TEST(Reduction, SingleMemberRandomProjectionMatchesSingleSample) {
  const auto inst = [] {
    Rng r0(6);
    auto p = build_synthetic(SyntheticKind::Random, 3, r0);
    return ProblemInstance{p, StateScaledGaussian{0.1, 0.5}};
  }();
  const auto& p = inst.problem;
  ASSERT_EQ(p.constraint_family->size(), 1u);
  StochasticOracle o1 = inst.make_oracle(), o2 = inst.make_oracle();
  StochasticOracle o3 = inst.make_oracle(), o4 = inst.make_oracle();
  Rng r1(9), r2(9), r3(9), r4(9);
  auto a = init_state(p), b = init_state(p), c = init_state(p), d = init_state(p);
  for (std::int64_t k = 1; k <= 100; ++k) {
    const double g = 0.1 / std::sqrt(static_cast<double>(k));
    step_r_sprg(a, p, o1, g, r1);
    step_sprg(b, p, o2, g, r2);
    step_r_sse(c, p, o3, g, r3);
    step_sse(d, p, o4, g, r4);
    ASSERT_EQ(a.x_curr, b.x_curr) << k;
    ASSERT_EQ(c.x_curr, d.x_curr) << k;
  }
}

// Wedge X = {y1 >= y2} ∩ {y1 >= -y2} from two halfspace members.
ViProblem wedge_problem(Vector d) {
  std::vector<Projector> members{Projector(Halfspace{vec({-1, 1}), 0.0}),
                                 Projector(Halfspace{vec({-1, -1}), 0.0})};
  Polyhedron poly;
  poly.a_in.resize(2, 2);
  poly.a_in << -1, 1, -1, -1;
  poly.b_in = vec({0, 0});
  poly.a_eq.resize(0, 2);
  poly.b_eq.resize(0);
  Projector full(poly);
  return ViProblem{"wedge", AffineMonotoneMap(Matrix::Identity(2, 2), std::move(d)), full,
                   ConstraintFamily(members, full), 1.0, std::nullopt, std::nullopt, std::nullopt};
}

// Finds a seed whose first constraint draw is `want`.
std::uint64_t seed_drawing(const ConstraintFamily& fam, std::size_t want) {
  for (std::uint64_t s = 1;; ++s) {
    Rng r(s);
    if (sample_constraint(fam, r) == want) return s;
  }
}

TEST(StepRSprg, HandStepPerBranchLeavesX) {
  // F(y) = y - (0, 4); from x0 = 0 the free step is (0, 0.4).
  const auto p = wedge_problem(vec({0, -4}));
  StochasticOracle o(p.map, NoNoise{});
  for (std::size_t l : {0u, 1u}) {
    Rng rng(seed_drawing(*p.constraint_family, l));
    auto s = init_state(p, vec({0, 0}));
    step_r_sprg(s, p, o, 0.1, rng);
    const Vector z = vec({0, 0.4});
    // Member 0: y2 <= y1 is violated, projection onto y1 = y2 gives (0.2, 0.2).
    // Member 1: y2 >= -y1 holds, the point is kept.
    const Vector want = l == 0 ? vec({0.2, 0.2}) : z;
    EXPECT_NEAR((s.x_curr - want).norm(), 0.0, 1e-15) << l;
    if (l == 1) {
      EXPECT_GT(dist_to_set(p.feasible_set, s.x_curr), 0.0);
    }
    EXPECT_EQ(s.counters.projections_member, 1);
    EXPECT_EQ(s.counters.projections_full, 0);
  }
}

TEST(StepRSse, HandStepPerBranch) {
  const auto p = wedge_problem(vec({0, -4}));
  StochasticOracle o(p.map, NoNoise{});
  for (std::size_t l : {0u, 1u}) {
    Rng rng(seed_drawing(*p.constraint_family, l));
    auto s = init_state(p, vec({0, 0}));
    step_r_sse(s, p, o, 0.1, rng);
    const Vector z = vec({0, 0.4});
    const Vector half = l == 0 ? vec({0.2, 0.2}) : z;
    // Second half: step from 0 with F(half) = half - (0, 4), then onto C.
    const Vector w = -0.1 * (half - vec({0, 4}));
    const Vector c = z - half;
    const Vector want = project_halfspace_closed_form(c, c.dot(half), w);
    EXPECT_NEAR((*s.x_half - half).norm(), 0.0, 1e-15) << l;
    EXPECT_NEAR((s.x_curr - want).norm(), 0.0, 1e-15) << l;
  }
}

TEST(RandomProjection, NeedsFamily) {
  auto p = interior();
  p.constraint_family.reset();
  StochasticOracle o(p.map, NoNoise{});
  Rng rng(1);
  auto s = init_state(p);
  EXPECT_THROW(step_r_sprg(s, p, o, 0.1, rng), DomainError);
}

TEST(Invariants, FeasibilityAndHalfspaceContainment) {
  auto inst = build_cournot(CournotSpec::defaults());
  const auto& p = inst.problem;
  StochasticOracle o = inst.make_oracle();
  Rng rng(12);
  const auto ys = points_in(p.feasible_set, 30, rng, 200.0);
  auto a = init_state(p), b = init_state(p);
  const auto batch = BatchSchedule::polynomial(1.1);
  for (std::int64_t k = 1; k <= 60; ++k) {
    step_v_sprg(a, p, o, 0.1, batch.at(k - 1), rng);
    EXPECT_LE(p.feasible_set.violation(a.x_curr), 1e-8);

    // Rebuild C_k from the step v-SSE is about to take, on a copied stream.
    const Vector xk = b.x_curr;
    Rng probe = rng;
    StochasticOracle po = inst.make_oracle();
    const Vector z = xk - 0.1 * po.batch_average(xk, batch.at(k - 1), probe);
    const Vector half = p.feasible_set.project(z);
    const Halfspace c = halfspace_from_sse_iterates(xk, z, half);
    step_v_sse(b, p, o, 0.1, batch.at(k - 1), rng);
    EXPECT_LE(p.feasible_set.violation(*b.x_half), 1e-8);
    EXPECT_EQ(*b.x_half, half);
    EXPECT_LE(c.c.dot(b.x_curr) - c.b, 1e-9 * (1.0 + c.c.norm() * b.x_curr.norm()));
    for (const Vector& y : ys) EXPECT_LE(c.c.dot(y) - c.b, 1e-8 * (1.0 + c.c.norm() * y.norm()));
  }
}

TEST(Accounting, ProjectionAndSampleCounts) {
  auto inst = build_cournot(CournotSpec::defaults());
  RunOptions opt;
  opt.iterations = 40;
  opt.checkpoints = {0, 10, 20, 40};
  opt.compute_gap = false;
  std::int64_t sum_n = 0;
  for (std::int64_t k = 0; k < 40; ++k) sum_n += opt.batch.at(k);
  for (SolverKind kind : {SolverKind::SEG, SolverKind::V_SPRG, SolverKind::V_SSE, SolverKind::SPG,
                          SolverKind::SPRG, SolverKind::SSE, SolverKind::R_SSE}) {
    Rng rng(4);
    RunOptions o = opt;
    if (is_random_projection(kind)) o.step = StepSchedule::diminishing(0.1);
    const auto rec = run(inst, kind, rng, o);
    const auto& last = rec.rows.back();
    EXPECT_EQ(last.proj_full, full_projections_per_iteration(kind) * 40) << to_string(kind);
    EXPECT_EQ(last.proj_member, member_projections_per_iteration(kind) * 40) << to_string(kind);
    EXPECT_EQ(last.proj_half, halfspace_projections_per_iteration(kind) * 40) << to_string(kind);
    const std::int64_t per = uses_halfspace(kind) || kind == SolverKind::SEG ? 2 : 1;
    const std::int64_t want = effective_batch(kind, 2) == 2 ? per * sum_n : per * 40;
    EXPECT_EQ(last.samples, want) << to_string(kind);
    for (std::size_t i = 1; i < rec.rows.size(); ++i) {
      if (full_projections_per_iteration(kind) > 0) {
        EXPECT_GT(rec.rows[i].proj_full, rec.rows[i - 1].proj_full);
      }
      EXPECT_GE(rec.rows[i].samples, rec.rows[i - 1].samples);
    }
  }
}

TEST(Run, ZeroIterationsRecordsInitialPoint) {
  const auto p = interior();
  ProblemInstance inst{p, NoNoise{}};
  RunOptions opt;
  opt.iterations = 0;
  Rng rng(1);
  const auto rec = run(inst, SolverKind::V_SPRG, rng, opt);
  ASSERT_EQ(rec.rows.size(), 1u);
  EXPECT_EQ(rec.rows[0].k, 0);
  EXPECT_EQ(rec.rows[0].proj_full, 0);
  EXPECT_NEAR(rec.rows[0].err_ref, 5.0, 1e-15);
  EXPECT_NEAR(rec.rows[0].gap_avg, gap(p, vec({0})).value, 1e-15);
}

TEST(Run, VSprgConvergesOnInterior) {
  ProblemInstance inst{interior(), NoNoise{}};
  RunOptions opt;
  opt.iterations = 1000;
  opt.batch = BatchSchedule::constant(1);
  opt.x0 = vec({0});
  Rng rng(1);
  const auto rec = run(inst, SolverKind::V_SPRG, rng, opt);
  EXPECT_LE(std::abs(rec.final_iterate[0] - 5.0), 1e-6);
  EXPECT_FALSE(rec.diverged);
}

TEST(Run, DivergenceCarriesPartialRecord) {
  Projector free(Box{vec({-kInf}), vec({kInf})});
  ViProblem p{"free", AffineMonotoneMap(Matrix::Identity(1, 1), vec({-5})), free, std::nullopt,
              1.0, std::nullopt, std::nullopt, std::nullopt};
  ProblemInstance inst{p, NoNoise{}};
  RunOptions opt;
  opt.step = StepSchedule::constant(1e13);
  opt.iterations = 10;
  opt.checkpoints = {0, 5, 10};
  Rng rng(1);
  try {
    run(inst, SolverKind::SPG, rng, opt);
    FAIL() << "expected divergence";
  } catch (const RunDivergedError& e) {
    EXPECT_TRUE(e.record().diverged);
    EXPECT_EQ(e.record().rows.size(), 1u);
    EXPECT_EQ(e.iteration(), 1);
  }
}

TEST(Run, InadmissibleStepRejected) {
  auto inst = build_cournot(CournotSpec::defaults());
  RunOptions opt;
  opt.step = StepSchedule::constant(0.5);
  Rng rng(1);
  EXPECT_THROW(run(inst, SolverKind::V_SPRG, rng, opt), ConfigError);
  opt.step = StepSchedule::diminishing(0.1);
  EXPECT_THROW(run(inst, SolverKind::R_SPRG, rng, opt), ConfigError);
  opt.assume_rp_stepsize_admissible = true;
  opt.iterations = 5;
  opt.compute_gap = false;
  EXPECT_NO_THROW(run(inst, SolverKind::R_SPRG, rng, opt));
}

TEST(Run, LazyAndEagerWindowsAgree) {
  auto inst = build_markov(MarkovSpec{60, 4, 2, "sinusoidal"});
  inst.noise = StateScaledGaussian{0.0, 0.05};
  RunOptions opt;
  opt.step = StepSchedule::diminishing(0.1);
  opt.iterations = 200;
  opt.checkpoints = {0, 25, 50, 100, 200};
  opt.kbar = 3;
  opt.assume_rp_stepsize_admissible = true;
  for (SolverKind kind : {SolverKind::R_SPRG, SolverKind::R_SSE}) {
    Rng r1(5), r2(5);
    RunOptions lazy = opt, eager = opt;
    eager.project_at_checkpoints_only = false;
    const auto a = run(inst, kind, r1, lazy);
    const auto b = run(inst, kind, r2, eager);
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      EXPECT_EQ(a.rows[i].gap_avg, b.rows[i].gap_avg);
      EXPECT_EQ(a.rows[i].dist_x_avg, b.rows[i].dist_x_avg);
    }
    // Checkpoint K is reported after step K + kbar.
    EXPECT_EQ(a.rows.back().k, 200);
    EXPECT_EQ(a.rows.back().proj_member, 203);
  }
}

TEST(WindowAverage, MatchesExplicitWindow) {
  auto inst = build_markov(MarkovSpec{40, 3, 4, "sinusoidal"});
  const auto& p = inst.problem;
  StochasticOracle o(p.map, StateScaledGaussian{0.0, 0.2});
  Rng rng(3);
  auto s = init_state(p);
  s.avg_window.emplace(p.feasible_set, std::vector<std::int64_t>{20}, 2, false);
  std::vector<std::pair<double, Vector>> window;
  for (std::int64_t k = 1; k <= 22; ++k) {
    const double g = 0.1 / std::sqrt(static_cast<double>(k));
    const Vector y = 2.0 * s.x_curr - s.x_prev;
    if (k >= 10 + 2 && k <= 22) window.emplace_back(g, y);
    step_r_sprg(s, p, o, g, rng);
  }
  const Vector want = finalize_window_average(p.feasible_set, window);
  EXPECT_LE((s.avg_window->finalize(20).projected - want).norm(), 1e-13);
}

TEST(ComputeKbar, Examples) {
  EXPECT_EQ(compute_kbar(0.5, 1), 3);
  EXPECT_EQ(compute_kbar(0.9, 1), 2);
  EXPECT_EQ(compute_kbar(0.5, 2), 7);
  EXPECT_THROW(compute_kbar(1.0, 1), DomainError);
  EXPECT_THROW(compute_kbar(0.0, 1), DomainError);
}

// Median distance to the solution over 11 seeds shrinks between checkpoints.
TEST(MedianTrend, VarianceReducedSchemesOnCournot) {
  auto inst = build_cournot(CournotSpec::defaults());
  inst.problem.reference_solution = reference_solve(inst.problem, 1e-12, 2000000);
  RunOptions opt;
  opt.iterations = 4000;
  opt.checkpoints = {500, 1000, 2000, 4000};
  opt.compute_gap = false;
  for (SolverKind kind : {SolverKind::V_SPRG, SolverKind::V_SSE}) {
    std::vector<std::vector<double>> err(4);
    for (std::uint64_t seed = 0; seed < 11; ++seed) {
      Rng rng = Rng::for_trial(77, seed);
      const auto rec = run(inst, kind, rng, opt);
      for (std::size_t i = 0; i < 4; ++i) err[i].push_back(rec.rows[i].err_ref);
    }
    for (std::size_t i = 1; i < 4; ++i) {
      EXPECT_LE(median(err[i]), median(err[i - 1])) << to_string(kind) << " at " << opt.checkpoints[i];
    }
  }
}

}  // namespace
}  // namespace svi
