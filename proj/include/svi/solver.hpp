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

// Single steps of the projection schemes. Each step_* advances the state by
// one iteration: k -> k + 1, with gamma and N chosen by the caller.
//
// Random stream order within a step is fixed: oracle noise first, then the
// constraint index, then any later noise (r-SSE draws its second sample after
// the index).

#ifndef SVI_SOLVER_HPP_
#define SVI_SOLVER_HPP_

#include <cstdint>
#include <optional>
#include <utility>

#include "svi/common.hpp"
#include "svi/constraint_family.hpp"
#include "svi/metrics.hpp"
#include "svi/problem.hpp"
#include "svi/projector.hpp"
#include "svi/rng.hpp"
#include "svi/sampling.hpp"
#include "svi/solver_kind.hpp"

namespace svi {

struct Counters {
  std::int64_t projections_full = 0;
  std::int64_t projections_member = 0;
  std::int64_t projections_halfspace = 0;
  std::int64_t samples = 0;
};

inline constexpr double kDivergenceNorm = 1e12;

struct SolverState {
  Vector x_curr;
  Vector x_prev;
  std::optional<Vector> x_half;
  // Number of completed steps.
  std::int64_t k = 0;
  Vector avg_sum;
  std::int64_t avg_count = 0;
  std::optional<WindowAverager> avg_window;
  Counters counters;
  // Gamma and batch of the most recent step.
  double last_gamma = kNaN;
  std::int64_t last_batch = 0;
};

// x_{-1} = x_0. The default x_0 is Pi_X(0).
inline SolverState init_state(const ViProblem& problem, const std::optional<Vector>& x0 = {}) {
  SolverState s;
  const Index n = problem.dim();
  if (x0) {
    require_dim("x0", n, x0->size());
    if (!x0->allFinite()) throw DomainError("x0 must be finite");
    s.x_curr = *x0;
  } else {
    s.x_curr = problem.feasible_set.project(Vector::Zero(n));
  }
  s.x_prev = s.x_curr;
  s.avg_sum = Vector::Zero(n);
  return s;
}

namespace detail {

inline void guard(const SolverState& s, const Vector& x_next) {
  if (!x_next.allFinite() || x_next.norm() > kDivergenceNorm) {
    throw DivergenceError("iterate diverged", s.x_curr, s.k + 1);
  }
}

inline void shift(SolverState& s, Vector x_next, double gamma, std::int64_t batch) {
  s.x_prev = std::move(s.x_curr);
  s.x_curr = std::move(x_next);
  s.last_gamma = gamma;
  s.last_batch = batch;
  ++s.k;
}

inline void accumulate(SolverState& s, const Vector& p) {
  s.avg_sum += p;
  ++s.avg_count;
}

inline const ConstraintFamily& family_of(const ViProblem& problem) {
  if (!problem.constraint_family) {
    throw DomainError("random-projection schemes need a constraint family");
  }
  return *problem.constraint_family;
}

}  // namespace detail

// x_{k+1} = Pi_X(x_k - gamma Fbar(x_k)).
inline void step_spg(SolverState& s, const ViProblem& problem, StochasticOracle& oracle,
                     double gamma, std::int64_t batch, Rng& rng) {
  const Vector f = oracle.batch_average(s.x_curr, batch, rng);
  Vector x_next = problem.feasible_set.project(s.x_curr - gamma * f);
  detail::guard(s, x_next);
  detail::accumulate(s, s.x_curr);
  s.counters.projections_full += 1;
  s.counters.samples += batch;
  detail::shift(s, std::move(x_next), gamma, batch);
}

// x_{k+1} = Pi_X(x_k - gamma Fbar(2 x_k - x_{k-1})).
inline void step_v_sprg(SolverState& s, const ViProblem& problem, StochasticOracle& oracle,
                        double gamma, std::int64_t batch, Rng& rng) {
  const Vector y = 2.0 * s.x_curr - s.x_prev;
  const Vector f = oracle.batch_average(y, batch, rng);
  Vector x_next = problem.feasible_set.project(s.x_curr - gamma * f);
  detail::guard(s, x_next);
  detail::accumulate(s, s.x_curr);
  s.counters.projections_full += 1;
  s.counters.samples += batch;
  detail::shift(s, std::move(x_next), gamma, batch);
}

inline void step_sprg(SolverState& s, const ViProblem& problem, StochasticOracle& oracle,
                      double gamma, Rng& rng) {
  step_v_sprg(s, problem, oracle, gamma, 1, rng);
}

// x_{k+1/2} = Pi_X(x_k - gamma Fbar(x_k)); x_{k+1} = Pi_X(x_k - gamma Fbar(x_{k+1/2})).
inline void step_seg(SolverState& s, const ViProblem& problem, StochasticOracle& oracle,
                     double gamma, std::int64_t batch, Rng& rng) {
  const Vector f1 = oracle.batch_average(s.x_curr, batch, rng);
  Vector half = problem.feasible_set.project(s.x_curr - gamma * f1);
  const Vector f2 = oracle.batch_average(half, batch, rng);
  Vector x_next = problem.feasible_set.project(s.x_curr - gamma * f2);
  detail::guard(s, x_next);
  detail::accumulate(s, half);
  s.counters.projections_full += 2;
  s.counters.samples += 2 * batch;
  s.x_half = std::move(half);
  detail::shift(s, std::move(x_next), gamma, batch);
}

// Second projection is onto the halfspace C_k containing X.
inline void step_v_sse(SolverState& s, const ViProblem& problem, StochasticOracle& oracle,
                       double gamma, std::int64_t batch, Rng& rng) {
  const Vector f1 = oracle.batch_average(s.x_curr, batch, rng);
  const Vector z = s.x_curr - gamma * f1;
  Vector half = problem.feasible_set.project(z);
  const Halfspace c = halfspace_from_sse_iterates(s.x_curr, z, half);
  const Vector f2 = oracle.batch_average(half, batch, rng);
  Vector x_next = project_halfspace_closed_form(c.c, c.b, s.x_curr - gamma * f2);
  detail::guard(s, x_next);
  detail::accumulate(s, half);
  s.counters.projections_full += 1;
  s.counters.projections_halfspace += 1;
  s.counters.samples += 2 * batch;
  s.x_half = std::move(half);
  detail::shift(s, std::move(x_next), gamma, batch);
}

inline void step_sse(SolverState& s, const ViProblem& problem, StochasticOracle& oracle,
                     double gamma, Rng& rng) {
  step_v_sse(s, problem, oracle, gamma, 1, rng);
}

// x_{k+1} = Pi_{X_l}(x_k - gamma F(y_k, w)), l drawn from the family. The
// window average receives y_k.
inline void step_r_sprg(SolverState& s, const ViProblem& problem, StochasticOracle& oracle,
                        double gamma, Rng& rng) {
  const ConstraintFamily& fam = detail::family_of(problem);
  const Vector y = 2.0 * s.x_curr - s.x_prev;
  const Vector f = oracle.sample(y, rng);
  const std::size_t l = sample_constraint(fam, rng);
  Vector x_next = fam.member(l).project(s.x_curr - gamma * f);
  detail::guard(s, x_next);
  detail::accumulate(s, s.x_curr);
  if (s.avg_window) s.avg_window->push(s.k + 1, gamma, y);
  s.counters.projections_member += 1;
  s.counters.samples += 1;
  detail::shift(s, std::move(x_next), gamma, 1);
}

// As v-SSE with the first projection onto a sampled member X_l. The window
// average receives x_{k+1/2}.
inline void step_r_sse(SolverState& s, const ViProblem& problem, StochasticOracle& oracle,
                       double gamma, Rng& rng) {
  const ConstraintFamily& fam = detail::family_of(problem);
  const Vector f1 = oracle.sample(s.x_curr, rng);
  const std::size_t l = sample_constraint(fam, rng);
  const Vector z = s.x_curr - gamma * f1;
  Vector half = fam.member(l).project(z);
  const Halfspace c = halfspace_from_sse_iterates(s.x_curr, z, half);
  const Vector f2 = oracle.sample(half, rng);
  Vector x_next = project_halfspace_closed_form(c.c, c.b, s.x_curr - gamma * f2);
  detail::guard(s, x_next);
  detail::accumulate(s, half);
  if (s.avg_window) s.avg_window->push(s.k + 1, gamma, half);
  s.counters.projections_member += 1;
  s.counters.projections_halfspace += 1;
  s.counters.samples += 2;
  s.x_half = std::move(half);
  detail::shift(s, std::move(x_next), gamma, 1);
}

// Batch size actually used by `kind` at a step whose schedule value is n.
// Only SEG and the variance-reduced schemes batch.
inline std::int64_t effective_batch(SolverKind kind, std::int64_t n) {
  return (kind == SolverKind::SEG || is_variance_reduced(kind)) ? n : 1;
}

inline void step(SolverKind kind, SolverState& s, const ViProblem& problem,
                 StochasticOracle& oracle, double gamma, std::int64_t batch, Rng& rng) {
  switch (kind) {
    case SolverKind::SPG: return step_spg(s, problem, oracle, gamma, 1, rng);
    case SolverKind::SEG: return step_seg(s, problem, oracle, gamma, batch, rng);
    case SolverKind::SPRG: return step_sprg(s, problem, oracle, gamma, rng);
    case SolverKind::SSE: return step_sse(s, problem, oracle, gamma, rng);
    case SolverKind::V_SPRG: return step_v_sprg(s, problem, oracle, gamma, batch, rng);
    case SolverKind::V_SSE: return step_v_sse(s, problem, oracle, gamma, batch, rng);
    case SolverKind::R_SPRG: return step_r_sprg(s, problem, oracle, gamma, rng);
    case SolverKind::R_SSE: return step_r_sse(s, problem, oracle, gamma, rng);
  }
}

// kbar = ceil(1 / (1 - (1 - beta/2)^(1/t)) - 1).
inline std::int64_t compute_kbar(double beta, double t) {
  if (!(beta > 0.0 && beta < 1.0)) throw DomainError("compute_kbar: beta must lie in (0, 1)");
  if (!(t >= 1.0)) throw DomainError("compute_kbar: t must be >= 1");
  const double r = std::pow(1.0 - 0.5 * beta, 1.0 / t);
  const double v = 1.0 / (1.0 - r) - 1.0;
  // Guard against values like 2.0000000000000004 from rounding.
  const double rv = std::round(v);
  return static_cast<std::int64_t>(std::abs(v - rv) <= 1e-9 * std::max(1.0, v) ? rv : std::ceil(v));
}

}  // namespace svi

#endif  // SVI_SOLVER_HPP_
