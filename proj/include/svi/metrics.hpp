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

#ifndef SVI_METRICS_HPP_
#define SVI_METRICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "svi/common.hpp"
#include "svi/problem.hpp"
#include "svi/rng.hpp"

namespace svi {

struct GapOptions {
  // Stationarity residual at which one ascent run stops.
  double tol = 1e-9;
  int max_iters = 20000;
  int starts = 10;
  std::uint64_t seed = 0x5eed;
  // x must lie within this distance-like violation of X.
  double feasibility_tol = 1e-6;
};

struct GapEstimate {
  double value = kNaN;
  double certificate_residual = kNaN;
  std::int64_t iterations_used = 0;
};

namespace detail {

// Ascent step for phi(y) = (My + d)^T (x - y). Its Hessian is -(M + M^T), so
// 1 / lambda_max(M + M^T) is the classical safe step. When the symmetric
// part vanishes phi is linear and any step works; 1 / ||M|| keeps the scale.
inline double gap_ascent_step(const Matrix& m) {
  const double lmax = max_symmetric_eigenvalue(m + m.transpose());
  const double nrm = m.norm();
  if (lmax > 1e-10 * std::max(1.0, nrm)) return 1.0 / lmax;
  return 1.0 / std::max(nrm, 1e-12);
}

}  // namespace detail

// G(x) = sup_{y in X} F(y)^T (x - y) by multi-start projected gradient ascent
// on the concave function phi(y) = (My + d)^T (x - y).
inline GapEstimate gap(const ViProblem& problem, const Vector& x,
                       const GapOptions& opt = {}) {
  require_dim("gap point", problem.dim(), x.size());
  if (!x.allFinite()) throw DomainError("gap: non-finite point");
  const double viol = problem.feasible_set.violation(x);
  if (viol > opt.feasibility_tol) {
    throw DomainError("gap: point violates X by " + std::to_string(viol));
  }
  const Matrix& m = problem.map.matrix();
  const Vector& d = problem.map.offset();
  const Projector& set = problem.feasible_set;
  const double sigma = detail::gap_ascent_step(m);
  const Matrix mt = m.transpose();

  auto phi = [&](const Vector& y) { return (m * y + d).dot(x - y); };
  auto grad = [&](const Vector& y) -> Vector { return mt * (x - y) - (m * y + d); };

  std::vector<Vector> starts;
  starts.push_back(set.project(x));
  if (problem.reference_solution) starts.push_back(set.project(*problem.reference_solution));
  Rng rng(opt.seed);
  const double scale = std::max(1.0, problem.diameter_bound.value_or(x.norm() + 1.0));
  while (static_cast<int>(starts.size()) < std::max(1, opt.starts)) {
    Vector z(x.size());
    for (Index i = 0; i < z.size(); ++i) z[i] = x[i] + scale * rng.normal();
    starts.push_back(set.project(z));
  }

  GapEstimate best;
  best.value = 0.0;  // phi(x) = 0 and x is feasible
  best.certificate_residual = kInf;
  for (const Vector& y0 : starts) {
    Vector y = y0;
    double val = phi(y);
    double run_best = val;
    double res = kInf;
    int it = 0;
    for (; it < opt.max_iters; ++it) {
      const Vector next = set.project(y + sigma * grad(y));
      res = (next - y).norm() / sigma;
      y = next;
      val = phi(y);
      run_best = std::max(run_best, val);
      if (res <= opt.tol) break;
    }
    best.iterations_used += it;
    if (run_best > best.value || !std::isfinite(best.certificate_residual)) {
      best.value = std::max(best.value, run_best);
      best.certificate_residual = res;
    }
  }
  return best;
}

// Certificate for `point`: gap value plus violation of X.
inline SolutionCertificate certify(const ViProblem& problem, const Vector& point,
                                   const GapOptions& opt = {}) {
  SolutionCertificate c;
  c.point = point;
  c.feasibility_residual = dist_to_set(problem.feasible_set, point);
  c.gap_value = gap(problem, point, opt).value;
  c.method = CertificateMethod::GapAscent;
  return c;
}

// Natural-map residual ||x - Pi_X(x - gamma F(x))||.
inline double natural_residual(const ViProblem& problem, const Vector& x, double gamma) {
  return (x - problem.feasible_set.project(x - gamma * problem.map(x))).norm();
}

struct ReferenceOptions {
  double tol = 1e-10;
  std::int64_t max_iters = 2000000;
  std::optional<Vector> x0;
};

// Deterministic extragradient on the expected map with gamma = 0.9 / L.
inline Vector reference_solve(const ViProblem& problem, const ReferenceOptions& opt = {}) {
  if (!(problem.lipschitz > 0.0)) throw DomainError("reference_solve: lipschitz must be > 0");
  const double gamma = 0.9 / problem.lipschitz;
  const Projector& set = problem.feasible_set;
  Vector x = set.project(opt.x0 ? *opt.x0 : Vector::Zero(problem.dim()));
  double res = kInf;
  for (std::int64_t k = 0; k < opt.max_iters; ++k) {
    const Vector fx = problem.map(x);
    const Vector half = set.project(x - gamma * fx);
    res = (x - half).norm();
    if (res <= opt.tol) return x;
    x = set.project(x - gamma * problem.map(half));
  }
  throw ConvergenceError("reference_solve: extragradient did not converge", x, res);
}

inline Vector reference_solve(const ViProblem& problem, double tol, std::int64_t max_iters) {
  ReferenceOptions o;
  o.tol = tol;
  o.max_iters = max_iters;
  return reference_solve(problem, o);
}

// sum / count for a uniform running average.
inline Vector finalize_uniform_average(const Vector& sum, std::int64_t count) {
  if (count < 1) throw DomainError("finalize_uniform_average: empty average");
  return sum / static_cast<double>(count);
}

// Step-weighted averages of projected points over the windows
// [floor(K/2) + kbar, K + kbar] of a set of checkpoints K. Points are pushed
// once per step s = 1, 2, ... and only kept while some pending window needs
// them. Projections onto X happen on push (eager) or on first use (lazy);
// both modes sum the same values in the same order.
class WindowAverager {
 public:
  WindowAverager(const Projector& full_set, std::vector<std::int64_t> checkpoints,
                 std::int64_t kbar, bool eager)
      : set_(&full_set), kbar_(kbar), eager_(eager) {
    if (kbar < 0) throw DomainError("WindowAverager: kbar must be >= 0");
    for (std::int64_t k : checkpoints) {
      if (k >= 1) pending_.push_back(k);
    }
    std::sort(pending_.begin(), pending_.end());
    pending_.erase(std::unique(pending_.begin(), pending_.end()), pending_.end());
  }

  static std::int64_t window_begin(std::int64_t k, std::int64_t kbar) {
    return std::max<std::int64_t>(1, k / 2 + kbar);
  }
  static std::int64_t window_end(std::int64_t k, std::int64_t kbar) { return k + kbar; }

  std::int64_t kbar() const { return kbar_; }
  bool eager() const { return eager_; }
  std::size_t stored() const { return points_.size(); }
  std::int64_t projections() const { return projections_; }

  void push(std::int64_t s, double gamma, const Vector& point) {
    if (s <= last_) throw DomainError("WindowAverager: steps must increase");
    last_ = s;
    if (!needed(s)) return;
    Entry e{gamma, point, std::nullopt};
    if (eager_) {
      e.projected = set_->project(point);
      ++projections_;
    }
    points_.emplace(s, std::move(e));
  }

  // True when every step of the window of checkpoint k has been pushed.
  bool ready(std::int64_t k) const { return last_ >= window_end(k, kbar_); }

  struct Result {
    Vector projected;  // sum gamma_s Pi_X(p_s) / sum gamma_s
    Vector raw;        // sum gamma_s p_s / sum gamma_s
  };

  // Window average for checkpoint k; releases points no longer needed.
  Result finalize(std::int64_t k) {
    if (!ready(k)) throw DomainError("finalize_window_average: run shorter than K + kbar");
    const std::int64_t lo = window_begin(k, kbar_);
    const std::int64_t hi = window_end(k, kbar_);
    Vector num;
    Vector raw;
    double den = 0.0;
    for (auto it = points_.lower_bound(lo); it != points_.end() && it->first <= hi; ++it) {
      Entry& e = it->second;
      if (!e.projected) {
        e.projected = set_->project(e.point);
        ++projections_;
      }
      if (num.size() == 0) {
        num = Vector::Zero(e.point.size());
        raw = Vector::Zero(e.point.size());
      }
      num += e.gamma * *e.projected;
      raw += e.gamma * e.point;
      den += e.gamma;
    }
    if (!(den > 0.0)) throw DomainError("finalize_window_average: empty window");
    pending_.erase(std::remove(pending_.begin(), pending_.end(), k), pending_.end());
    prune();
    return {num / den, raw / den};
  }

 private:
  struct Entry {
    double gamma;
    Vector point;
    std::optional<Vector> projected;
  };

  bool needed(std::int64_t s) const {
    for (std::int64_t k : pending_) {
      if (s >= window_begin(k, kbar_) && s <= window_end(k, kbar_)) return true;
    }
    return false;
  }

  void prune() {
    std::int64_t keep_from = last_ + 1;
    for (std::int64_t k : pending_) keep_from = std::min(keep_from, window_begin(k, kbar_));
    points_.erase(points_.begin(), points_.lower_bound(keep_from));
  }

  const Projector* set_;
  std::int64_t kbar_;
  bool eager_;
  std::vector<std::int64_t> pending_;
  std::map<std::int64_t, Entry> points_;
  std::int64_t last_ = 0;
  std::int64_t projections_ = 0;
};

inline Vector finalize_window_average(WindowAverager& avg, std::int64_t k) {
  return avg.finalize(k).projected;
}

// Step-weighted average of Pi_X over explicit (gamma, point) pairs.
inline Vector finalize_window_average(const Projector& set,
                                      const std::vector<std::pair<double, Vector>>& window) {
  if (window.empty()) throw DomainError("finalize_window_average: empty window");
  Vector num = Vector::Zero(window.front().second.size());
  double den = 0.0;
  for (const auto& [g, p] : window) {
    num += g * set.project(p);
    den += g;
  }
  if (!(den > 0.0)) throw DomainError("finalize_window_average: zero total weight");
  return num / den;
}

struct SlopeFit {
  double slope = kNaN;
  double intercept = kNaN;
  double r2 = kNaN;
};

// Least-squares fit of log(value) against log(k).
inline SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& rows) {
  if (rows.size() < 3) throw DomainError("fit_loglog_slope: need at least 3 points");
  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& [k, v] : rows) {
    if (!(k > 0.0) || !(v > 0.0) || !std::isfinite(k) || !std::isfinite(v)) {
      throw DomainError("fit_loglog_slope: k and value must be positive and finite");
    }
    lx.push_back(std::log(k));
    ly.push_back(std::log(v));
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw DomainError("fit_loglog_slope: k values must not all coincide");
  SlopeFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return f;
}

}  // namespace svi

#endif  // SVI_METRICS_HPP_
