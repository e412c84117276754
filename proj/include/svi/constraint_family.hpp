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

#ifndef SVI_CONSTRAINT_FAMILY_HPP_
#define SVI_CONSTRAINT_FAMILY_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "svi/common.hpp"
#include "svi/projector.hpp"
#include "svi/rng.hpp"

namespace svi {

// X = X_1 ∩ ... ∩ X_m together with the sampling law over members.
class ConstraintFamily {
 public:
  ConstraintFamily(std::vector<Projector> members, Projector full_set)
      : ConstraintFamily(std::move(members),
                         std::vector<double>(),
                         std::move(full_set)) {}

  ConstraintFamily(std::vector<Projector> members, std::vector<double> weights,
                   Projector full_set)
      : members_(std::move(members)),
        weights_(std::move(weights)),
        full_set_(std::move(full_set)) {
    if (members_.empty()) throw DomainError("ConstraintFamily: no members");
    if (weights_.empty()) {
      weights_.assign(members_.size(), 1.0 / static_cast<double>(members_.size()));
    }
    if (weights_.size() != members_.size()) {
      throw DomainError("ConstraintFamily: one weight per member required");
    }
    double sum = 0.0;
    for (double w : weights_) {
      if (!(w > 0.0)) throw DomainError("ConstraintFamily: weights must be positive");
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw DomainError("ConstraintFamily: weights must sum to 1");
    }
    for (const auto& m : members_) require_dim("ConstraintFamily member", full_set_.dim(), m.dim());
    cdf_.resize(weights_.size());
    std::partial_sum(weights_.begin(), weights_.end(), cdf_.begin());
    cdf_.back() = 1.0;
  }

  std::size_t size() const { return members_.size(); }
  Index dim() const { return full_set_.dim(); }
  const std::vector<Projector>& members() const { return members_; }
  const Projector& member(std::size_t i) const { return members_.at(i); }
  const std::vector<double>& weights() const { return weights_; }
  const Projector& full_set() const { return full_set_; }
  const std::vector<double>& cdf() const { return cdf_; }

 private:
  std::vector<Projector> members_;
  std::vector<double> weights_;
  Projector full_set_;
  std::vector<double> cdf_;
};

// Draws a member index with probability weights[i]. A single-member family
// returns 0 without touching the stream.
inline std::size_t sample_constraint(const ConstraintFamily& family, Rng& rng) {
  if (family.size() == 1) return 0;
  const double u = rng.uniform01();
  const auto& cdf = family.cdf();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

// Empirical (not certified) lower estimate of the linear-regularity constant
// eta in dist^2(x, X) <= eta * max_i dist^2(x, X_i), taken as the largest
// ratio over Gaussian points around `center`.
inline double empirical_regularity_estimate(const ConstraintFamily& family,
                                            const Vector& center, double scale,
                                            int points, Rng& rng) {
  double eta = 0.0;
  Vector x(family.dim());
  for (int t = 0; t < points; ++t) {
    for (Index i = 0; i < x.size(); ++i) x[i] = center[i] + scale * rng.normal();
    const double full = dist_to_set(family.full_set(), x);
    double worst = 0.0;
    for (const auto& m : family.members()) worst = std::max(worst, dist_to_set(m, x));
    if (worst > 0.0) eta = std::max(eta, (full * full) / (worst * worst));
  }
  return eta;
}

}  // namespace svi

#endif  // SVI_CONSTRAINT_FAMILY_HPP_
