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

#ifndef SVI_RUN_HPP_
#define SVI_RUN_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "svi/common.hpp"
#include "svi/metrics.hpp"
#include "svi/problem.hpp"
#include "svi/sampling.hpp"
#include "svi/schedules.hpp"
#include "svi/solver.hpp"
#include "svi/solver_kind.hpp"

namespace svi {

struct RunRow {
  std::int64_t k = 0;
  std::int64_t proj_full = 0;
  std::int64_t proj_member = 0;
  std::int64_t proj_half = 0;
  std::int64_t samples = 0;
  double gamma = kNaN;
  std::int64_t batch = 0;  // 0 before the first step
  double gap_avg = kNaN;
  double dist_x_iter = kNaN;
  double dist_x_avg = kNaN;
  double err_ref = kNaN;
  double elapsed_ms = kNaN;
};

struct RunMeta {
  std::string scheme;
  std::uint64_t seed = 0;
  std::string problem_id;
  std::string config_hash;
};

struct RunRecord {
  RunMeta meta;
  std::vector<RunRow> rows;
  Vector final_iterate;
  Vector final_average;
  bool diverged = false;
  std::string message;
};

// Thrown by run() on divergence; carries the rows recorded so far.
class RunDivergedError : public DivergenceError {
 public:
  RunDivergedError(const DivergenceError& e, RunRecord partial)
      : DivergenceError(e), record_(std::move(partial)) {}
  const RunRecord& record() const { return record_; }

 private:
  RunRecord record_;
};

struct RunOptions {
  StepSchedule step = StepSchedule::constant(0.1);
  BatchSchedule batch = BatchSchedule::polynomial(1.1);
  std::int64_t iterations = 1000;
  // Defaults to log-spaced points when empty.
  std::vector<std::int64_t> checkpoints;
  std::int64_t kbar = 0;
  bool project_at_checkpoints_only = true;
  bool assume_rp_stepsize_admissible = false;
  std::optional<Vector> x0;
  bool compute_gap = true;
  GapOptions gap;
  RunMeta meta;
};

// `count` log-spaced integers in [1, K] plus 0 and K.
inline std::vector<std::int64_t> log_spaced_checkpoints(std::int64_t iterations, int count = 20) {
  if (iterations < 0) throw DomainError("log_spaced_checkpoints: K must be >= 0");
  std::vector<std::int64_t> out{0};
  if (iterations >= 1 && count >= 1) {
    const double top = std::log(static_cast<double>(iterations));
    for (int i = 0; i < count; ++i) {
      const double e = count == 1 ? top : top * i / (count - 1);
      out.push_back(std::clamp<std::int64_t>(std::llround(std::exp(e)), 1, iterations));
    }
    out.push_back(iterations);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Rejects steps the theory does not cover for `kind`.
inline void check_admissible(SolverKind kind, const ViProblem& problem, const NoiseModel& noise,
                             const RunOptions& opt) {
  if (kind == SolverKind::R_SPRG && !opt.assume_rp_stepsize_admissible) {
    throw ConfigError(
        "r-sprg: the initial-step condition involves unobservable constants; set "
        "assume_rp_stepsize_admissible to run it");
  }
  const std::int64_t n0 = effective_batch(kind, opt.batch.at(0));
  const double bound = admissible_gamma_max(kind, problem.lipschitz, noise_nu1(noise), n0);
  const double g = opt.step.max_step();
  if (g > bound) {
    std::ostringstream m;
    m.precision(6);
    m << std::string(to_string(kind)) << ": step " << g << " exceeds admissible bound " << bound;
    throw ConfigError(m.str());
  }
}

namespace detail {

inline RunRow checkpoint_row(SolverKind kind, SolverState& s, const ViProblem& problem,
                             const RunOptions& opt, double elapsed_ms, Vector* avg_out) {
  RunRow r;
  r.k = s.k;
  r.proj_full = s.counters.projections_full;
  r.proj_member = s.counters.projections_member;
  r.proj_half = s.counters.projections_halfspace;
  r.samples = s.counters.samples;
  r.gamma = s.last_gamma;
  r.batch = s.last_batch;
  r.elapsed_ms = elapsed_ms;
  const Projector& set = problem.feasible_set;
  r.dist_x_iter = dist_to_set(set, s.x_curr);
  if (problem.reference_solution) r.err_ref = (s.x_curr - *problem.reference_solution).norm();

  // The reported point: uniform average for the full-projection schemes,
  // window-weighted projected average for the random-projection ones, and
  // Pi_X(x_0) at k = 0.
  Vector point;
  if (s.k == 0) {
    point = set.project(s.x_curr);
    r.dist_x_avg = dist_to_set(set, s.x_curr);
  } else if (is_random_projection(kind)) {
    auto res = s.avg_window->finalize(s.k - s.avg_window->kbar());
    point = std::move(res.projected);
    r.dist_x_avg = dist_to_set(set, res.raw);
  } else {
    point = finalize_uniform_average(s.avg_sum, s.avg_count);
    r.dist_x_avg = dist_to_set(set, point);
    // Averages of points of X lie in X up to projector tolerance; the gap
    // is taken at the projection so inner-solver noise cannot reject it.
    point = set.project(point);
  }
  if (opt.compute_gap) r.gap_avg = gap(problem, point, opt.gap).value;
  if (avg_out) *avg_out = std::move(point);
  return r;
}

}  // namespace detail

// Runs `kind` for opt.iterations steps, recording metrics at each checkpoint.
// With kbar > 0 the row of checkpoint K is written once step K + kbar is done
// (its counters then refer to step K + kbar).
inline RunRecord run(const ViProblem& problem, SolverKind kind, StochasticOracle& oracle,
                     Rng& rng, const RunOptions& opt) {
  if (opt.iterations < 0) throw ConfigError("iterations must be >= 0");
  check_admissible(kind, problem, oracle.noise(), opt);
  if (is_random_projection(kind)) detail::family_of(problem);

  std::vector<std::int64_t> cps =
      opt.checkpoints.empty() ? log_spaced_checkpoints(opt.iterations) : opt.checkpoints;
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  for (std::int64_t c : cps) {
    if (c < 0 || c > opt.iterations) throw ConfigError("checkpoints must lie in [0, K]");
  }
  const std::int64_t kbar = is_random_projection(kind) ? opt.kbar : 0;
  const std::int64_t total = opt.iterations + (cps.empty() ? 0 : kbar);

  RunRecord rec;
  rec.meta = opt.meta;
  rec.meta.scheme = std::string(to_string(kind));
  if (rec.meta.problem_id.empty()) rec.meta.problem_id = problem.id;

  SolverState s = init_state(problem, opt.x0);
  if (is_random_projection(kind)) {
    s.avg_window.emplace(problem.feasible_set, cps, kbar, !opt.project_at_checkpoints_only);
  }

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };

  std::size_t next_cp = 0;
  auto flush = [&] {
    while (next_cp < cps.size()) {
      const std::int64_t c = cps[next_cp];
      if (s.k < (c == 0 ? 0 : c + kbar)) break;
      Vector avg;
      RunRow row = detail::checkpoint_row(kind, s, problem, opt, elapsed(), &avg);
      row.k = c;
      rec.rows.push_back(row);
      rec.final_average = std::move(avg);
      ++next_cp;
    }
  };

  try {
    flush();
    while (s.k < total) {
      const std::int64_t k = s.k + 1;
      const double gamma = opt.step.at(k);
      const std::int64_t batch = effective_batch(kind, opt.batch.at(k - 1));
      step(kind, s, problem, oracle, gamma, batch, rng);
      flush();
    }
  } catch (const DivergenceError& e) {
    rec.diverged = true;
    rec.message = e.what();
    rec.final_iterate = s.x_curr;
    throw RunDivergedError(e, std::move(rec));
  }
  rec.final_iterate = s.x_curr;
  return rec;
}

inline RunRecord run(const ProblemInstance& inst, SolverKind kind, Rng& rng,
                     const RunOptions& opt) {
  StochasticOracle oracle = inst.make_oracle();
  return run(inst.problem, kind, oracle, rng, opt);
}

}  // namespace svi

#endif  // SVI_RUN_HPP_
