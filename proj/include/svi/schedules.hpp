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

#ifndef SVI_SCHEDULES_HPP_
#define SVI_SCHEDULES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "svi/common.hpp"
#include "svi/solver_kind.hpp"

namespace svi {

// N_k = max(N_min, ceil((k+1)^a)) for k = 0, 1, ...; or a constant batch.
class BatchSchedule {
 public:
  static BatchSchedule polynomial(double exponent, std::int64_t n_min = 1) {
    if (!(exponent > 1.0) || !std::isfinite(exponent)) {
      throw DomainError("BatchSchedule: exponent must be > 1");
    }
    if (n_min < 1) throw DomainError("BatchSchedule: N_min must be >= 1");
    return BatchSchedule(exponent, n_min);
  }

  static BatchSchedule constant(std::int64_t n) {
    if (n < 1) throw DomainError("BatchSchedule: constant batch must be >= 1");
    return BatchSchedule(0.0, n);
  }

  bool is_constant() const { return exponent_ == 0.0; }
  double exponent() const { return exponent_; }
  std::int64_t n_min() const { return n_min_; }

  std::int64_t at(std::int64_t k) const {
    if (k < 0) throw DomainError("batch_size: k must be >= 0");
    if (is_constant()) return n_min_;
    const double p = std::pow(static_cast<double>(k + 1), exponent_);
    const double r = std::round(p);
    // Exact integer powers (e.g. 10^2) must not be bumped by rounding error.
    const double n = std::abs(p - r) <= 1e-9 * p ? r : std::ceil(p);
    return std::max<std::int64_t>(n_min_, static_cast<std::int64_t>(n));
  }

 private:
  BatchSchedule(double a, std::int64_t n_min) : exponent_(a), n_min_(n_min) {}

  double exponent_;
  std::int64_t n_min_;
};

inline std::int64_t batch_size(const BatchSchedule& s, std::int64_t k) { return s.at(k); }

// Constant gamma, or gamma_k = gamma0 / k^(t/2) for k >= 1.
class StepSchedule {
 public:
  static StepSchedule constant(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
      throw DomainError("StepSchedule: gamma must be positive and finite");
    }
    return StepSchedule(gamma, 0.0);
  }

  static StepSchedule diminishing(double gamma0, double t = 1.0) {
    if (!(gamma0 > 0.0) || !std::isfinite(gamma0)) {
      throw DomainError("StepSchedule: gamma0 must be positive and finite");
    }
    if (!(t >= 1.0 && t <= 2.0)) throw DomainError("StepSchedule: t must lie in [1, 2]");
    return StepSchedule(gamma0, t);
  }

  bool is_constant() const { return t_ == 0.0; }
  double gamma0() const { return gamma_; }
  double t() const { return t_; }

  // Largest step the schedule ever takes.
  double max_step() const { return gamma_; }

  // sum gamma_k diverges.
  bool non_summable() const { return true; }
  // sum gamma_k^2 converges.
  bool square_summable() const { return !is_constant() && t_ > 1.0; }

  double at(std::int64_t k) const {
    if (is_constant()) return gamma_;
    if (k < 1) throw DomainError("step_size: diminishing schedules start at k = 1");
    if (t_ == 1.0) return gamma_ / std::sqrt(static_cast<double>(k));
    if (t_ == 2.0) return gamma_ / static_cast<double>(k);
    return gamma_ * std::pow(static_cast<double>(k), -0.5 * t_);
  }

 private:
  StepSchedule(double g, double t) : gamma_(g), t_(t) {}

  double gamma_;
  double t_;
};

inline double step_size(const StepSchedule& s, std::int64_t k) { return s.at(k); }

// Largest constant step for which the convergence theory of `kind` applies,
// given Lipschitz constant L, state-noise constant nu1 and first batch N0.
//
//   v-SPRG, SPRG : 1 / (8 sqrt(L^2 + 10 nu1^2 / N0))
//   v-SSE,  SSE  : 1 / (sqrt(2) sqrt(L^2 + 4 nu1^2 / N0))
//   SEG          : same bound as SSE
//   r-SSE        : 1 / (2 sqrt(L^2 + 2 nu1^2))
//   r-SPRG, SPG  : +inf. r-SPRG additionally needs an initial-step condition
//                  involving unobservable constants; callers must opt in.
inline double admissible_gamma_max(SolverKind kind, double lipschitz, double nu1,
                                   std::int64_t n0 = 1) {
  if (lipschitz < 0.0 || nu1 < 0.0) throw DomainError("admissible_gamma_max: negative constant");
  if (lipschitz == 0.0 && nu1 == 0.0) {
    throw DomainError("admissible_gamma_max: L = nu1 = 0 (constant map) has no step bound");
  }
  if (n0 < 1) throw DomainError("admissible_gamma_max: N0 must be >= 1");
  const double l2 = lipschitz * lipschitz;
  const double v2 = nu1 * nu1;
  const double n = static_cast<double>(n0);
  switch (kind) {
    case SolverKind::V_SPRG:
    case SolverKind::SPRG:
      return 1.0 / (8.0 * std::sqrt(l2 + 10.0 * v2 / n));
    case SolverKind::V_SSE:
    case SolverKind::SSE:
    case SolverKind::SEG:
      return 1.0 / (std::sqrt(2.0) * std::sqrt(l2 + 4.0 * v2 / n));
    case SolverKind::R_SSE:
      return 1.0 / (2.0 * std::sqrt(l2 + 2.0 * v2));
    case SolverKind::R_SPRG:
    case SolverKind::SPG:
      return kInf;
  }
  return kInf;
}

// Initial step bound under which the r-SSE rate result holds.
inline double r_sse_rate_gamma0_max(double lipschitz, double nu1) {
  return 1.0 / (2.0 * std::sqrt(lipschitz * lipschitz + 5.0 * nu1 * nu1));
}

}  // namespace svi

#endif  // SVI_SCHEDULES_HPP_
