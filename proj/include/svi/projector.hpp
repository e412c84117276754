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

// Euclidean projections onto closed convex sets.
//
// Every set is a value of `Projector`, a closed variant over the supported
// shapes. Closed forms are used where they exist; `DykstraIntersection`
// handles finite intersections of arbitrary members, and `Polyhedron`
// solves the nearest-point problem for a low-dimensional polyhedron exactly
// with a dual active-set method.

#ifndef SVI_PROJECTOR_HPP_
#define SVI_PROJECTOR_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "svi/common.hpp"

namespace svi {

class Projector;

// {y : lo <= y <= hi}; infinite bounds allowed.
struct Box {
  Vector lo;
  Vector hi;
};

// {y : y >= 0} in R^n.
struct Nonneg {
  Index n = 0;
};

// {y : c^T y <= b}.
struct Halfspace {
  Vector c;
  double b = 0.0;
};

// {y : a^T y = b}.
struct Hyperplane {
  Vector a;
  double b = 0.0;
};

// {y : y >= 0, sum(y) = radius}.
struct Simplex {
  Index n = 0;
  double radius = 1.0;
};

struct HalfspaceMeetHyperplane {
  Halfspace halfspace;
  Hyperplane hyperplane;
};

// Cartesian product over disjoint coordinate subsets. Coordinates not
// covered by any block are unconstrained.
struct Product {
  Index n = 0;
  std::vector<Projector> parts;
  std::vector<std::vector<Index>> indices;
};

struct DykstraIntersection {
  std::vector<Projector> sets;
  double tol = 1e-10;
  int max_iters = 20000;
};

// {y : A_in y <= b_in, A_eq y = b_eq}. Rows are constraints.
struct Polyhedron {
  Matrix a_in;
  Vector b_in;
  Matrix a_eq;
  Vector b_eq;
};

class Projector {
 public:
  using Variant = std::variant<Box, Nonneg, Halfspace, Hyperplane, Simplex,
                               HalfspaceMeetHyperplane, Product,
                               DykstraIntersection, Polyhedron>;

  Projector(Box v);
  Projector(Nonneg v);
  Projector(Halfspace v);
  Projector(Hyperplane v);
  Projector(Simplex v);
  Projector(HalfspaceMeetHyperplane v);
  Projector(Product v);
  Projector(DykstraIntersection v);
  Projector(Polyhedron v);

  const Variant& variant() const { return v_; }
  Index dim() const { return dim_; }
  std::string kind() const;

  Vector project(const Vector& z) const;

  // Distance-like measure of constraint violation (exact distance for the
  // single-constraint shapes, max over members for composites).
  double violation(const Vector& x) const;

  bool contains(const Vector& x, double tol) const { return violation(x) <= tol; }

 private:
  Variant v_;
  Index dim_ = 0;
};

// ---------------------------------------------------------------------------
// Closed-form building blocks.

// Projection onto {y : c^T y <= rhs}. A zero normal with rhs >= 0 is all of
// R^n; a zero normal with rhs < 0 is empty.
inline Vector project_halfspace_closed_form(const Vector& c, double rhs,
                                            const Vector& z) {
  require_dim("project_halfspace_closed_form", c.size(), z.size());
  const double cc = c.squaredNorm();
  if (cc == 0.0) {
    if (rhs >= 0.0) return z;
    throw InfeasibleError("empty halfspace: zero normal with negative offset");
  }
  const double v = c.dot(z) - rhs;
  if (v <= 0.0) return z;
  return z - (v / cc) * c;
}

inline Vector project_hyperplane(const Vector& a, double rhs, const Vector& z) {
  const double aa = a.squaredNorm();
  if (aa == 0.0) {
    if (rhs == 0.0) return z;
    throw InfeasibleError("empty hyperplane: zero normal with nonzero offset");
  }
  return z - ((a.dot(z) - rhs) / aa) * a;
}

// Sort-based projection onto the scaled simplex.
inline Vector project_simplex(const Vector& z, double radius) {
  const Index n = z.size();
  if (n == 0) throw DomainError("project_simplex: empty vector");
  std::vector<double> u(z.data(), z.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumsum = 0.0;
  double theta = 0.0;
  for (Index k = 0; k < n; ++k) {
    cumsum += u[k];
    const double t = (cumsum - radius) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  return (z.array() - theta).max(0.0).matrix();
}

// Halfspace C_k = {y : (step_point - x_half)^T (y - x_half) <= 0} used by the
// subgradient-extragradient family. When x_half is the projection of
// step_point onto X, X is contained in C_k.
inline Halfspace halfspace_from_sse_iterates(const Vector& x_k, const Vector& step_point,
                                             const Vector& x_half) {
  require_dim("halfspace_from_sse_iterates", x_k.size(), step_point.size());
  require_dim("halfspace_from_sse_iterates", x_k.size(), x_half.size());
  Halfspace h;
  h.c = step_point - x_half;
  h.b = h.c.dot(x_half);
  return h;
}

inline Vector project_halfspace_meet_hyperplane(const HalfspaceMeetHyperplane& s,
                                                const Vector& z) {
  const Vector& a = s.hyperplane.a;
  const Vector& c = s.halfspace.c;
  Vector y = project_hyperplane(a, s.hyperplane.b, z);
  const double viol = c.dot(y) - s.halfspace.b;
  if (viol <= 0.0) return y;
  // Both constraints active: y = z - lambda a - mu c with a 2x2 Gram system.
  const double aa = a.squaredNorm();
  const double ac = a.dot(c);
  const double cc = c.squaredNorm();
  const double det = aa * cc - ac * ac;
  if (det <= 1e-14 * aa * cc) {
    // Parallel normals: on the hyperplane c^T y is constant and exceeds b.
    throw InfeasibleError("halfspace and hyperplane do not intersect");
  }
  const double r1 = a.dot(z) - s.hyperplane.b;
  const double r2 = c.dot(z) - s.halfspace.b;
  const double lambda = (cc * r1 - ac * r2) / det;
  const double mu = (aa * r2 - ac * r1) / det;
  return z - lambda * a - mu * c;
}

// ---------------------------------------------------------------------------
// Exact projection onto a polyhedron with identity Hessian (Goldfarb-Idnani).

namespace detail {

class NearestPointSolver {
 public:
  NearestPointSolver(const Polyhedron& p, const Vector& z)
      : p_(p), n_(z.size()), x_(z), j_(Matrix::Identity(n_, n_)), r_(Matrix::Zero(n_, n_)) {}

  Vector solve() {
    const Index meq = p_.a_eq.rows();
    const Index mineq = p_.a_in.rows();
    for (Index e = 0; e < meq; ++e) add_equality(e);

    const int max_outer = static_cast<int>(10 * (mineq + n_) + 100);
    for (int outer = 0; outer < max_outer; ++outer) {
      // Most violated inequality, measured in distance units.
      Index p = -1;
      double worst = 0.0;
      for (Index i = 0; i < mineq; ++i) {
        if (is_active_[static_cast<std::size_t>(i)]) continue;
        const double nrm = row_norm(i);
        if (nrm == 0.0) {
          if (p_.b_in[i] < 0.0) throw InfeasibleError("polyhedron: 0 <= negative");
          continue;
        }
        const double s = (p_.b_in[i] - p_.a_in.row(i).dot(x_)) / nrm;
        const double tol = 1e-13 * (1.0 + std::abs(p_.b_in[i]) / nrm + x_.norm());
        if (s < -tol && s < worst) {
          worst = s;
          p = i;
        }
      }
      if (p < 0) return x_;
      add_inequality(p);
    }
    throw ConvergenceError("polyhedron projection: active-set cycling", x_,
                           max_violation());
  }

  void init_active(Index mineq) { is_active_.assign(static_cast<std::size_t>(mineq), false); }

 private:
  double row_norm(Index i) const { return p_.a_in.row(i).norm(); }

  double max_violation() const {
    double v = 0.0;
    for (Index i = 0; i < p_.a_in.rows(); ++i) {
      const double nrm = row_norm(i);
      if (nrm > 0) v = std::max(v, (p_.a_in.row(i).dot(x_) - p_.b_in[i]) / nrm);
    }
    return v;
  }

  // Primal direction z = J2 J2^T n and dual direction r = R^{-1} J1^T n.
  void directions(const Vector& np, Vector& d, Vector& zdir, Vector& rdir) const {
    d = j_.transpose() * np;
    zdir = j_.rightCols(n_ - iq_) * d.tail(n_ - iq_);
    rdir.resize(iq_);
    for (Index i = iq_ - 1; i >= 0; --i) {
      double s = d[i];
      for (Index k = i + 1; k < iq_; ++k) s -= r_(i, k) * rdir[k];
      rdir[i] = s / r_(i, i);
    }
  }

  bool add_column(Vector d) {
    for (Index j = n_ - 1; j > iq_; --j) {
      double a = d[j - 1], b = d[j];
      if (b == 0.0) continue;
      const double h = std::hypot(a, b);
      const double c = a / h, s = b / h;
      d[j - 1] = h;
      d[j] = 0.0;
      for (Index k = 0; k < n_; ++k) {
        const double t1 = j_(k, j - 1), t2 = j_(k, j);
        j_(k, j - 1) = c * t1 + s * t2;
        j_(k, j) = -s * t1 + c * t2;
      }
    }
    if (std::abs(d[iq_]) <= 1e-14 * std::max(1.0, d.head(iq_ + 1).norm())) return false;
    for (Index i = 0; i <= iq_; ++i) r_(i, iq_) = d[i];
    ++iq_;
    return true;
  }

  void drop_column(Index l) {
    for (Index col = l; col < iq_ - 1; ++col) r_.col(col) = r_.col(col + 1);
    r_.col(iq_ - 1).setZero();
    --iq_;
    for (Index j = l; j < iq_; ++j) {
      const double a = r_(j, j), b = r_(j + 1, j);
      if (b == 0.0) continue;
      const double h = std::hypot(a, b);
      const double c = a / h, s = b / h;
      for (Index col = j; col < iq_; ++col) {
        const double t1 = r_(j, col), t2 = r_(j + 1, col);
        r_(j, col) = c * t1 + s * t2;
        r_(j + 1, col) = -s * t1 + c * t2;
      }
      for (Index k = 0; k < n_; ++k) {
        const double t1 = j_(k, j), t2 = j_(k, j + 1);
        j_(k, j) = c * t1 + s * t2;
        j_(k, j + 1) = -s * t1 + c * t2;
      }
    }
    const std::size_t pos = static_cast<std::size_t>(l);
    const Index id = active_[pos];
    if (id >= 0) is_active_[static_cast<std::size_t>(id)] = false;
    active_.erase(active_.begin() + static_cast<std::ptrdiff_t>(pos));
    u_.erase(u_.begin() + static_cast<std::ptrdiff_t>(pos));
  }

  void add_equality(Index e) {
    const Vector np = p_.a_eq.row(e).transpose();
    Vector d, zdir, rdir;
    directions(np, d, zdir, rdir);
    const double denom = zdir.dot(np);
    const double resid = p_.b_eq[e] - np.dot(x_);
    if (zdir.norm() <= 1e-12 * np.norm()) {
      if (std::abs(resid) <= 1e-10 * (1.0 + std::abs(p_.b_eq[e]))) return;
      throw InfeasibleError("polyhedron: inconsistent equality constraints");
    }
    const double t = resid / denom;
    x_ += t * zdir;
    for (Index i = 0; i < iq_; ++i) u_[static_cast<std::size_t>(i)] -= t * rdir[i];
    if (!add_column(d)) throw InfeasibleError("polyhedron: dependent equality");
    active_.push_back(-1 - e);
    u_.push_back(t);
  }

  // GI step for inequality p, written for c_p(x) = b_p - a_p^T x >= 0 with
  // normal n_p = -a_p.
  void add_inequality(Index p) {
    const Vector np = -p_.a_in.row(p).transpose();
    double uplus = 0.0;
    for (int guard = 0; guard < 4 * static_cast<int>(n_) + 16; ++guard) {
      Vector d, zdir, rdir;
      directions(np, d, zdir, rdir);
      const double s = np.dot(x_) + p_.b_in[p];  // c_p(x) = b_p - a_p^T x
      double t1 = kInf;
      Index l = -1;
      for (Index i = 0; i < iq_; ++i) {
        if (active_[static_cast<std::size_t>(i)] < 0) continue;  // equality
        if (rdir[i] > 0.0) {
          const double ratio = u_[static_cast<std::size_t>(i)] / rdir[i];
          if (ratio < t1) {
            t1 = ratio;
            l = i;
          }
        }
      }
      double t2 = kInf;
      const bool zero_step = zdir.norm() <= 1e-12 * np.norm();
      if (!zero_step) t2 = -s / zdir.dot(np);
      if (t1 == kInf && t2 == kInf) throw InfeasibleError("polyhedron is empty");
      if (t2 == kInf) {
        for (Index i = 0; i < iq_; ++i) u_[static_cast<std::size_t>(i)] -= t1 * rdir[i];
        uplus += t1;
        drop_column(l);
        continue;
      }
      const double t = std::min(t1, t2);
      x_ += t * zdir;
      for (Index i = 0; i < iq_; ++i) u_[static_cast<std::size_t>(i)] -= t * rdir[i];
      uplus += t;
      if (t2 <= t1) {
        if (!add_column(d)) return;  // numerically dependent; x already moved
        active_.push_back(p);
        u_.push_back(uplus);
        is_active_[static_cast<std::size_t>(p)] = true;
        return;
      }
      drop_column(l);
    }
    throw ConvergenceError("polyhedron projection: inner loop cap", x_, max_violation());
  }

  const Polyhedron& p_;
  Index n_;
  Vector x_;
  Matrix j_;
  Matrix r_;
  Index iq_ = 0;
  std::vector<Index> active_;  // inequality row, or -1 - row for equalities
  std::vector<double> u_;
  std::vector<bool> is_active_;
};

}  // namespace detail

inline Vector project_polyhedron(const Polyhedron& p, const Vector& z) {
  detail::NearestPointSolver solver(p, z);
  solver.init_active(p.a_in.rows());
  return solver.solve();
}

// ---------------------------------------------------------------------------

namespace detail {

inline Index validate_dim(const Box& b) {
  require_dim("Box bounds", b.lo.size(), b.hi.size());
  for (Index i = 0; i < b.lo.size(); ++i) {
    if (std::isnan(b.lo[i]) || std::isnan(b.hi[i]) || b.lo[i] > b.hi[i]) {
      throw DomainError("Box: require lo <= hi in every coordinate");
    }
  }
  return b.lo.size();
}
inline Index validate_dim(const Nonneg& s) { return s.n; }
inline Index validate_dim(const Halfspace& h) { return h.c.size(); }
inline Index validate_dim(const Hyperplane& h) { return h.a.size(); }
inline Index validate_dim(const Simplex& s) {
  if (!(s.radius > 0.0)) throw DomainError("Simplex: radius must be positive");
  if (s.n < 1) throw DomainError("Simplex: dimension must be >= 1");
  return s.n;
}
inline Index validate_dim(const HalfspaceMeetHyperplane& s) {
  require_dim("HalfspaceMeetHyperplane", s.halfspace.c.size(), s.hyperplane.a.size());
  return s.halfspace.c.size();
}
inline Index validate_dim(const Product& p);
inline Index validate_dim(const DykstraIntersection& d);
inline Index validate_dim(const Polyhedron& p) {
  const Index n = std::max(p.a_in.cols(), p.a_eq.cols());
  if (p.a_in.rows() > 0) require_dim("Polyhedron inequality rows", n, p.a_in.cols());
  if (p.a_eq.rows() > 0) require_dim("Polyhedron equality rows", n, p.a_eq.cols());
  require_dim("Polyhedron b_in", p.a_in.rows(), p.b_in.size());
  require_dim("Polyhedron b_eq", p.a_eq.rows(), p.b_eq.size());
  if (n == 0) throw DomainError("Polyhedron: no constraints");
  return n;
}

}  // namespace detail

inline Projector::Projector(Box v) : v_(std::move(v)) {
  dim_ = detail::validate_dim(std::get<Box>(v_));
}
inline Projector::Projector(Nonneg v) : v_(v) { dim_ = v.n; }
inline Projector::Projector(Halfspace v) : v_(std::move(v)) {
  dim_ = detail::validate_dim(std::get<Halfspace>(v_));
}
inline Projector::Projector(Hyperplane v) : v_(std::move(v)) {
  dim_ = detail::validate_dim(std::get<Hyperplane>(v_));
}
inline Projector::Projector(Simplex v) : v_(v) { dim_ = detail::validate_dim(v); }
inline Projector::Projector(HalfspaceMeetHyperplane v) : v_(std::move(v)) {
  dim_ = detail::validate_dim(std::get<HalfspaceMeetHyperplane>(v_));
}
inline Projector::Projector(Product v) : v_(std::move(v)) {
  dim_ = detail::validate_dim(std::get<Product>(v_));
}
inline Projector::Projector(DykstraIntersection v) : v_(std::move(v)) {
  dim_ = detail::validate_dim(std::get<DykstraIntersection>(v_));
}
inline Projector::Projector(Polyhedron v) : v_(std::move(v)) {
  dim_ = detail::validate_dim(std::get<Polyhedron>(v_));
}

namespace detail {

inline Index validate_dim(const Product& p) {
  if (p.parts.size() != p.indices.size()) {
    throw DomainError("Product: parts and index lists differ in length");
  }
  std::vector<bool> used(static_cast<std::size_t>(p.n), false);
  for (std::size_t b = 0; b < p.parts.size(); ++b) {
    require_dim("Product block", p.parts[b].dim(), static_cast<Index>(p.indices[b].size()));
    for (Index i : p.indices[b]) {
      if (i < 0 || i >= p.n) throw DomainError("Product: index out of range");
      if (used[static_cast<std::size_t>(i)]) throw DomainError("Product: overlapping blocks");
      used[static_cast<std::size_t>(i)] = true;
    }
  }
  return p.n;
}

inline Index validate_dim(const DykstraIntersection& d) {
  if (d.sets.empty()) throw DomainError("DykstraIntersection: no member sets");
  if (!(d.tol > 0.0) || d.max_iters < 1) {
    throw DomainError("DykstraIntersection: tol must be > 0 and max_iters >= 1");
  }
  const Index n = d.sets.front().dim();
  for (const auto& s : d.sets) require_dim("DykstraIntersection member", n, s.dim());
  return n;
}

inline Vector project_dykstra(const DykstraIntersection& d, const Vector& z) {
  const std::size_t m = d.sets.size();
  std::vector<Vector> increments(m, Vector::Zero(z.size()));
  Vector x = z;
  double change = kInf;
  for (int sweep = 0; sweep < d.max_iters; ++sweep) {
    const Vector start = x;
    for (std::size_t i = 0; i < m; ++i) {
      const Vector y = x + increments[i];
      x = d.sets[i].project(y);
      increments[i] = y - x;
    }
    const double prev = change;
    change = (x - start).norm();
    // Remaining distance to the limit, from the observed linear rate.
    const double rate = prev > 0.0 ? change / prev : 0.0;
    const double remaining = rate < 1.0 ? change * std::max(1.0, rate / (1.0 - rate)) : kInf;
    if (change == 0.0 || remaining <= d.tol) {
      double viol = 0.0;
      for (const auto& s : d.sets) viol = std::max(viol, s.violation(x));
      if (viol <= d.tol) return x;
    }
  }
  double viol = 0.0;
  for (const auto& s : d.sets) viol = std::max(viol, s.violation(x));
  throw ConvergenceError("Dykstra did not converge", x, std::max(change, viol));
}

}  // namespace detail

inline std::string Projector::kind() const {
  struct Visitor {
    std::string operator()(const Box&) const { return "box"; }
    std::string operator()(const Nonneg&) const { return "nonneg"; }
    std::string operator()(const Halfspace&) const { return "halfspace"; }
    std::string operator()(const Hyperplane&) const { return "hyperplane"; }
    std::string operator()(const Simplex&) const { return "simplex"; }
    std::string operator()(const HalfspaceMeetHyperplane&) const {
      return "halfspace-meet-hyperplane";
    }
    std::string operator()(const Product&) const { return "product"; }
    std::string operator()(const DykstraIntersection&) const { return "dykstra"; }
    std::string operator()(const Polyhedron&) const { return "polyhedron"; }
  };
  return std::visit(Visitor{}, v_);
}

inline Vector Projector::project(const Vector& z) const {
  require_dim("project", dim_, z.size());
  struct Visitor {
    const Vector& z;
    Vector operator()(const Box& b) const { return z.cwiseMax(b.lo).cwiseMin(b.hi); }
    Vector operator()(const Nonneg&) const { return z.cwiseMax(0.0); }
    Vector operator()(const Halfspace& h) const {
      return project_halfspace_closed_form(h.c, h.b, z);
    }
    Vector operator()(const Hyperplane& h) const { return project_hyperplane(h.a, h.b, z); }
    Vector operator()(const Simplex& s) const { return project_simplex(z, s.radius); }
    Vector operator()(const HalfspaceMeetHyperplane& s) const {
      return project_halfspace_meet_hyperplane(s, z);
    }
    Vector operator()(const Product& p) const {
      Vector out = z;
      for (std::size_t b = 0; b < p.parts.size(); ++b) {
        const auto& idx = p.indices[b];
        Vector local(static_cast<Index>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k) local[static_cast<Index>(k)] = z[idx[k]];
        const Vector proj = p.parts[b].project(local);
        for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] = proj[static_cast<Index>(k)];
      }
      return out;
    }
    Vector operator()(const DykstraIntersection& d) const { return detail::project_dykstra(d, z); }
    Vector operator()(const Polyhedron& p) const { return project_polyhedron(p, z); }
  };
  return std::visit(Visitor{z}, v_);
}

inline double Projector::violation(const Vector& x) const {
  require_dim("violation", dim_, x.size());
  struct Visitor {
    const Vector& x;
    double operator()(const Box& b) const {
      double v = 0.0;
      for (Index i = 0; i < x.size(); ++i) {
        v = std::max({v, b.lo[i] - x[i], x[i] - b.hi[i]});
      }
      return v;
    }
    double operator()(const Nonneg&) const {
      return x.size() == 0 ? 0.0 : std::max(0.0, -x.minCoeff());
    }
    double operator()(const Halfspace& h) const {
      const double nrm = h.c.norm();
      if (nrm == 0.0) return h.b >= 0.0 ? 0.0 : kInf;
      return std::max(0.0, (h.c.dot(x) - h.b) / nrm);
    }
    double operator()(const Hyperplane& h) const {
      const double nrm = h.a.norm();
      if (nrm == 0.0) return h.b == 0.0 ? 0.0 : kInf;
      return std::abs(h.a.dot(x) - h.b) / nrm;
    }
    double operator()(const Simplex& s) const {
      const double neg = std::max(0.0, -x.minCoeff());
      const double sum = std::abs(x.sum() - s.radius) / std::sqrt(static_cast<double>(x.size()));
      return std::max(neg, sum);
    }
    double operator()(const HalfspaceMeetHyperplane& s) const {
      return std::max((*this)(s.halfspace), (*this)(s.hyperplane));
    }
    double operator()(const Product& p) const {
      double v = 0.0;
      for (std::size_t b = 0; b < p.parts.size(); ++b) {
        const auto& idx = p.indices[b];
        Vector local(static_cast<Index>(idx.size()));
        for (std::size_t k = 0; k < idx.size(); ++k) local[static_cast<Index>(k)] = x[idx[k]];
        v = std::max(v, p.parts[b].violation(local));
      }
      return v;
    }
    double operator()(const DykstraIntersection& d) const {
      double v = 0.0;
      for (const auto& s : d.sets) v = std::max(v, s.violation(x));
      return v;
    }
    double operator()(const Polyhedron& p) const {
      double v = 0.0;
      for (Index i = 0; i < p.a_in.rows(); ++i) {
        const double nrm = p.a_in.row(i).norm();
        if (nrm > 0) v = std::max(v, (p.a_in.row(i).dot(x) - p.b_in[i]) / nrm);
      }
      for (Index i = 0; i < p.a_eq.rows(); ++i) {
        const double nrm = p.a_eq.row(i).norm();
        if (nrm > 0) v = std::max(v, std::abs(p.a_eq.row(i).dot(x) - p.b_eq[i]) / nrm);
      }
      return v;
    }
  };
  return std::visit(Visitor{x}, v_);
}

inline Vector project(const Projector& p, const Vector& z) { return p.project(z); }

inline double dist_to_set(const Projector& p, const Vector& z) {
  return (z - p.project(z)).norm();
}

}  // namespace svi

#endif  // SVI_PROJECTOR_HPP_
