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

// Small instances with known solutions.

#ifndef SVI_PROBLEMS_SYNTHETIC_HPP_
#define SVI_PROBLEMS_SYNTHETIC_HPP_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/SVD>

#include "svi/common.hpp"
#include "svi/problem.hpp"
#include "svi/projector.hpp"
#include "svi/rng.hpp"

namespace svi {

enum class SyntheticKind {
  Interior,        // X = [0, 10], F(x) = x - 5, x* = 5
  Boundary,        // X = [0, 3],  F(x) = x - 5, x* = 3
  Skew,            // X = [0, 1]^2, F(x) = [[0, 1], [-1, 0]] x + (-0.5, 0.25), x* = (0.25, 0.5)
  NonnegPlusOne,   // X = [0, inf), F(x) = x + 1, x* = 0
  Triangle,        // X = {y >= 0, y1 + y2 <= 2} as three halfspaces, F(y) = y - (2, -1), x* = (2, 0)
  Random,          // X = [-1, 1]^n, random monotone affine map
};

inline SyntheticKind synthetic_kind_from_string(std::string_view s) {
  if (s == "interior") return SyntheticKind::Interior;
  if (s == "boundary") return SyntheticKind::Boundary;
  if (s == "skew") return SyntheticKind::Skew;
  if (s == "nonneg-plus-one") return SyntheticKind::NonnegPlusOne;
  if (s == "triangle") return SyntheticKind::Triangle;
  if (s == "random") return SyntheticKind::Random;
  throw ConfigError("unknown synthetic kind '" + std::string(s) + "'");
}

namespace detail {

inline Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline ViProblem box_problem(std::string id, Matrix m, Vector d, Vector lo, Vector hi,
                             std::optional<Vector> ref) {
  const double lip = Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
  auto diam = box_diameter(lo, hi);
  Projector set(Box{std::move(lo), std::move(hi)});
  return ViProblem{std::move(id), AffineMonotoneMap(std::move(m), std::move(d)), set,
                   ConstraintFamily({set}, set), lip, diam, std::move(ref), std::nullopt};
}

}  // namespace detail

// `n` is only read by Random. Every fixture carries a one-member family
// whose member is X itself.
inline ViProblem build_synthetic(SyntheticKind kind, Index n, Rng& rng) {
  using detail::vec;
  switch (kind) {
    case SyntheticKind::Interior:
      return detail::box_problem("interior", Matrix::Identity(1, 1), vec({-5}), vec({0}),
                                 vec({10}), vec({5}));
    case SyntheticKind::Boundary:
      return detail::box_problem("boundary", Matrix::Identity(1, 1), vec({-5}), vec({0}),
                                 vec({3}), vec({3}));
    case SyntheticKind::Skew: {
      Matrix m(2, 2);
      m << 0, 1, -1, 0;
      return detail::box_problem("skew", m, vec({-0.5, 0.25}), vec({0, 0}), vec({1, 1}),
                                 vec({0.25, 0.5}));
    }
    case SyntheticKind::NonnegPlusOne: {
      Projector set(Nonneg{1});
      return ViProblem{"nonneg-plus-one", AffineMonotoneMap(Matrix::Identity(1, 1), vec({1})),
                       set, ConstraintFamily({set}, set), 1.0, std::nullopt, vec({0}),
                       std::nullopt};
    }
    case SyntheticKind::Triangle: {
      std::vector<Projector> members{Projector(Halfspace{vec({-1, 0}), 0.0}),
                                     Projector(Halfspace{vec({0, -1}), 0.0}),
                                     Projector(Halfspace{vec({1, 1}), 2.0})};
      Polyhedron poly;
      poly.a_in.resize(3, 2);
      poly.a_in << -1, 0, 0, -1, 1, 1;
      poly.b_in = vec({0, 0, 2});
      poly.a_eq.resize(0, 2);
      poly.b_eq.resize(0);
      Projector set(poly);
      return ViProblem{"triangle", AffineMonotoneMap(Matrix::Identity(2, 2), vec({-2, 1})), set,
                       ConstraintFamily(std::move(members), set), 1.0, std::sqrt(8.0),
                       vec({2, 0}), std::nullopt};
    }
    case SyntheticKind::Random: {
      if (n < 1) throw DomainError("synthetic random: n must be >= 1");
      Matrix a(n, n);
      Matrix b(n, n);
      Vector d(n);
      for (Index i = 0; i < n; ++i) {
        d[i] = rng.normal();
        for (Index j = 0; j < n; ++j) {
          a(i, j) = rng.normal();
          b(i, j) = rng.normal();
        }
      }
      const Matrix m = (a * a.transpose()) / static_cast<double>(n) + (b - b.transpose()) / 2.0;
      return detail::box_problem("random-" + std::to_string(n), m, d,
                                 Vector::Constant(n, -1.0), Vector::Constant(n, 1.0),
                                 std::nullopt);
    }
  }
  throw DomainError("unknown synthetic kind");
}

}  // namespace svi

#endif  // SVI_PROBLEMS_SYNTHETIC_HPP_
