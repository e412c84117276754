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

#ifndef SVI_PROBLEM_HPP_
#define SVI_PROBLEM_HPP_

#include <optional>
#include <string>
#include <utility>

#include "svi/affine_map.hpp"
#include "svi/common.hpp"
#include "svi/constraint_family.hpp"
#include "svi/projector.hpp"
#include "svi/sampling.hpp"

namespace svi {

// VI(X, F): find x* in X with F(x*)^T (x - x*) >= 0 for all x in X.
struct ViProblem {
  std::string id;
  AffineMonotoneMap map;
  Projector feasible_set;
  std::optional<ConstraintFamily> constraint_family;
  double lipschitz = 0.0;
  // Bound D_X on the diameter of X; nullopt when unknown.
  std::optional<double> diameter_bound;
  std::optional<Vector> reference_solution;
  // Weak-sharpness constant; metadata only, never read by the solvers.
  std::optional<double> weak_sharpness;

  Index dim() const { return map.dim(); }
};

// Checks shape consistency and that `lipschitz` is not below ||M||_2.
inline void validate_problem(const ViProblem& p) {
  require_dim("feasible set", p.dim(), p.feasible_set.dim());
  if (p.constraint_family) require_dim("constraint family", p.dim(), p.constraint_family->dim());
  if (p.reference_solution) require_dim("reference solution", p.dim(), p.reference_solution->size());
  if (!(p.lipschitz >= 0.0)) throw DomainError("lipschitz must be >= 0");
  const double est = estimate_lipschitz(p.map);
  if (p.lipschitz < est - 1e-6) {
    throw DomainError("lipschitz constant " + std::to_string(p.lipschitz) +
                      " is below ||M||_2 ~ " + std::to_string(est));
  }
  if (p.diameter_bound && !(*p.diameter_bound >= 0.0)) {
    throw DomainError("diameter bound must be >= 0");
  }
}

// Exact diameter of a box (distance between opposite corners); nullopt if
// the box is unbounded.
inline std::optional<double> box_diameter(const Vector& lo, const Vector& hi) {
  if (!lo.allFinite() || !hi.allFinite()) return std::nullopt;
  return (hi - lo).norm();
}

enum class CertificateMethod { GapAscent, Enumeration };

struct SolutionCertificate {
  Vector point;
  double gap_value = kNaN;
  double feasibility_residual = kNaN;
  CertificateMethod method = CertificateMethod::GapAscent;
};

// A problem plus the noise law of its stochastic oracle.
struct ProblemInstance {
  ViProblem problem;
  NoiseModel noise = NoNoise{};

  StochasticOracle make_oracle() const { return StochasticOracle(problem.map, noise); }
};

}  // namespace svi

#endif  // SVI_PROBLEM_HPP_
