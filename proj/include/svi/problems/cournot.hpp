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

// Stochastic Nash-Cournot game on a network of J nodes with I firms. Firm i
// produces q_ij and sells s_ij at node j; the price at node j is
// a_j(xi) - b_j sum_i s_ij. Transportation is free, so each firm only needs
// sum_j q_ij = sum_j s_ij.
//
// Variables are stacked node-major: s_ij sits at j*I + i and q_ij at
// I*J + j*I + i, which makes the map block diagonal:
//
//   F(s, q) = (B s - a; c),  B = blockdiag_j b_j (I + 1 1^T).

#ifndef SVI_PROBLEMS_COURNOT_HPP_
#define SVI_PROBLEMS_COURNOT_HPP_

#include <cmath>
#include <string>
#include <vector>

#include "svi/common.hpp"
#include "svi/metrics.hpp"
#include "svi/problem.hpp"
#include "svi/projector.hpp"
#include "svi/sampling.hpp"

namespace svi {

struct CournotSpec {
  int n_firms = 5;
  int n_nodes = 4;
  Matrix cap;      // I x J
  Vector b;        // J
  Matrix c;        // I x J
  Vector a_mean;   // J
  Vector a_halfwidth;  // J

  // cap = 300, c = 1.5, b = 0.05, a ~ U[49.5, 50.5].
  static CournotSpec defaults(int firms = 5, int nodes = 4) {
    return uniform(firms, nodes, 300.0, 1.5, 0.05, 50.0, 0.5);
  }

  static CournotSpec uniform(int firms, int nodes, double cap, double cost, double slope,
                             double a_mean, double a_halfwidth) {
    if (firms < 1 || nodes < 1) throw DomainError("CournotSpec: need >= 1 firm and node");
    CournotSpec s;
    s.n_firms = firms;
    s.n_nodes = nodes;
    s.cap = Matrix::Constant(firms, nodes, cap);
    s.c = Matrix::Constant(firms, nodes, cost);
    s.b = Vector::Constant(nodes, slope);
    s.a_mean = Vector::Constant(nodes, a_mean);
    s.a_halfwidth = Vector::Constant(nodes, a_halfwidth);
    return s;
  }
};

inline Index cournot_s_index(const CournotSpec& s, int firm, int node) {
  return static_cast<Index>(node) * s.n_firms + firm;
}

inline Index cournot_q_index(const CournotSpec& s, int firm, int node) {
  return static_cast<Index>(s.n_firms) * s.n_nodes + cournot_s_index(s, firm, node);
}

inline void validate_cournot(const CournotSpec& s) {
  if (s.n_firms < 1 || s.n_nodes < 1) throw DomainError("cournot: need >= 1 firm and node");
  const Index i = s.n_firms;
  const Index j = s.n_nodes;
  if (s.cap.rows() != i || s.cap.cols() != j) throw DimensionError("cournot cap", i * j, s.cap.size());
  if (s.c.rows() != i || s.c.cols() != j) throw DimensionError("cournot c", i * j, s.c.size());
  require_dim("cournot b", j, s.b.size());
  require_dim("cournot a_mean", j, s.a_mean.size());
  require_dim("cournot a_halfwidth", j, s.a_halfwidth.size());
  if (!((s.b.array() > 0.0).all())) throw DomainError("cournot: b_j must be > 0");
  if (!((s.cap.array() > 0.0).all()) || !s.cap.allFinite()) {
    throw DomainError("cournot: cap must be positive and finite");
  }
  if ((s.a_halfwidth.array() < 0.0).any()) throw DomainError("cournot: negative noise width");
  if (!s.c.allFinite() || !s.a_mean.allFinite()) throw DomainError("cournot: non-finite data");
}

// Firm i's feasible set in its own (s_i, q_i) coordinates.
inline Projector cournot_firm_set(const CournotSpec& s, int firm) {
  const Index nj = s.n_nodes;
  Vector a(2 * nj);
  a << Vector::Constant(nj, -1.0), Vector::Constant(nj, 1.0);
  Vector lo = Vector::Zero(2 * nj);
  Vector hi(2 * nj);
  hi << Vector::Constant(nj, kInf), s.cap.row(firm).transpose();
  DykstraIntersection d;
  d.sets = {Projector(Hyperplane{a, 0.0}), Projector(Box{lo, hi})};
  return Projector(std::move(d));
}

inline std::vector<Index> cournot_firm_indices(const CournotSpec& s, int firm) {
  std::vector<Index> idx;
  for (int j = 0; j < s.n_nodes; ++j) idx.push_back(cournot_s_index(s, firm, j));
  for (int j = 0; j < s.n_nodes; ++j) idx.push_back(cournot_q_index(s, firm, j));
  return idx;
}

// Builds the expected-value VI and the additive noise on the -a entries. The
// noise of node j is one draw shared by all firms at that node.
inline ProblemInstance build_cournot(const CournotSpec& s) {
  validate_cournot(s);
  const int ni = s.n_firms;
  const int nj = s.n_nodes;
  const Index n = 2 * static_cast<Index>(ni) * nj;

  Matrix m = Matrix::Zero(n, n);
  Vector d = Vector::Zero(n);
  for (int j = 0; j < nj; ++j) {
    for (int i = 0; i < ni; ++i) {
      for (int k = 0; k < ni; ++k) {
        m(cournot_s_index(s, i, j), cournot_s_index(s, k, j)) = s.b[j] * (i == k ? 2.0 : 1.0);
      }
      d[cournot_s_index(s, i, j)] = -s.a_mean[j];
      d[cournot_q_index(s, i, j)] = s.c(i, j);
    }
  }

  Product prod;
  prod.n = n;
  for (int i = 0; i < ni; ++i) {
    prod.parts.push_back(cournot_firm_set(s, i));
    prod.indices.push_back(cournot_firm_indices(s, i));
  }
  Projector full(prod);

  // X_i: firm i's constraints, every other coordinate free.
  std::vector<Projector> members;
  for (int i = 0; i < ni; ++i) {
    Product one;
    one.n = n;
    one.parts.push_back(cournot_firm_set(s, i));
    one.indices.push_back(cournot_firm_indices(s, i));
    members.emplace_back(std::move(one));
  }

  // Corner distance of the bounding box 0 <= s_ij <= sum_j cap_ij, 0 <= q <= cap.
  Vector hi(n);
  for (int i = 0; i < ni; ++i) {
    const double total = s.cap.row(i).sum();
    for (int j = 0; j < nj; ++j) {
      hi[cournot_s_index(s, i, j)] = total;
      hi[cournot_q_index(s, i, j)] = s.cap(i, j);
    }
  }

  AdditiveUniform noise;
  noise.half_width = Vector::Zero(n);
  noise.group.assign(static_cast<std::size_t>(n), -1);
  int group = 0;
  for (int j = 0; j < nj; ++j) {
    if (s.a_halfwidth[j] == 0.0) continue;
    for (int i = 0; i < ni; ++i) {
      noise.half_width[cournot_s_index(s, i, j)] = s.a_halfwidth[j];
      noise.group[static_cast<std::size_t>(cournot_s_index(s, i, j))] = group;
    }
    ++group;
  }

  // ||B||_2 = max_j b_j (I + 1).
  const double lip = s.b.maxCoeff() * (ni + 1);
  ViProblem p{"cournot-" + std::to_string(ni) + "x" + std::to_string(nj),
              AffineMonotoneMap(std::move(m), std::move(d)),
              full,
              ConstraintFamily(std::move(members), full),
              lip,
              box_diameter(Vector::Zero(n), hi),
              std::nullopt,
              std::nullopt};
  ProblemInstance inst{std::move(p), NoNoise{}};
  if (group > 0) inst.noise = std::move(noise);
  return inst;
}

}  // namespace svi

#endif  // SVI_PROBLEMS_COURNOT_HPP_
