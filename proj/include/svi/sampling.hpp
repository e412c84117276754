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

// Stochastic oracles F(x, w) = F(x) + noise(x, w) with zero conditional mean
// and second moment bounded by nu1^2 ||x||^2 + nu2^2.

#ifndef SVI_SAMPLING_HPP_
#define SVI_SAMPLING_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "svi/affine_map.hpp"
#include "svi/common.hpp"
#include "svi/rng.hpp"

namespace svi {

struct NoNoise {};

// w_i = half_width_i * u_{group_i} with u_g ~ U[-1, 1] i.i.d. per group.
// Coordinates sharing a group id share one draw; group -1 marks a noiseless
// coordinate. Groups must be numbered 0..G-1.
struct AdditiveUniform {
  Vector half_width;
  std::vector<int> group;

  static AdditiveUniform independent(const Vector& half_width) {
    AdditiveUniform a;
    a.half_width = half_width;
    int next = 0;
    for (Index i = 0; i < half_width.size(); ++i) {
      a.group.push_back(half_width[i] != 0.0 ? next++ : -1);
    }
    return a;
  }
};

// w = (nu1 ||x|| g1 + nu2 g2) / sqrt(2) * u with g1, g2 ~ N(0, 1) and u
// uniform on the unit sphere, so E[||w||^2 | x] = (nu1^2 ||x||^2 + nu2^2) / 2.
struct StateScaledGaussian {
  double nu1 = 0.0;
  double nu2 = 0.0;
};

using NoiseModel = std::variant<NoNoise, AdditiveUniform, StateScaledGaussian>;

inline int group_count(const AdditiveUniform& a) {
  int g = 0;
  for (int id : a.group) g = std::max(g, id + 1);
  return g;
}

inline void validate_noise(const NoiseModel& noise, Index n) {
  if (const auto* a = std::get_if<AdditiveUniform>(&noise)) {
    require_dim("AdditiveUniform half_width", n, a->half_width.size());
    require_dim("AdditiveUniform group", n, static_cast<Index>(a->group.size()));
    if ((a->half_width.array() < 0.0).any()) {
      throw DomainError("AdditiveUniform: half widths must be non-negative");
    }
    std::vector<bool> seen(static_cast<std::size_t>(group_count(*a)), false);
    for (int id : a->group) {
      if (id < -1) throw DomainError("AdditiveUniform: group ids must be >= -1");
      if (id >= 0) seen[static_cast<std::size_t>(id)] = true;
    }
    for (bool s : seen) {
      if (!s) throw DomainError("AdditiveUniform: group ids must be contiguous from 0");
    }
  } else if (const auto* g = std::get_if<StateScaledGaussian>(&noise)) {
    if (!(g->nu1 >= 0.0) || !(g->nu2 >= 0.0)) {
      throw DomainError("StateScaledGaussian: nu1, nu2 must be non-negative");
    }
  }
}

// Constants (nu1, nu2) of the second-moment bound satisfied by the model.
inline double noise_nu1(const NoiseModel& noise) {
  if (const auto* g = std::get_if<StateScaledGaussian>(&noise)) return g->nu1;
  return 0.0;
}

inline double noise_nu2(const NoiseModel& noise) {
  if (const auto* a = std::get_if<AdditiveUniform>(&noise)) {
    return std::sqrt(a->half_width.squaredNorm() / 3.0);
  }
  if (const auto* g = std::get_if<StateScaledGaussian>(&noise)) return g->nu2;
  return 0.0;
}

// Exact E[||w||^2 | x] of the model.
inline double noise_second_moment(const NoiseModel& noise, const Vector& x) {
  if (const auto* a = std::get_if<AdditiveUniform>(&noise)) {
    double s = 0.0;
    for (Index i = 0; i < a->half_width.size(); ++i) {
      if (a->group[static_cast<std::size_t>(i)] >= 0) s += a->half_width[i] * a->half_width[i];
    }
    return s / 3.0;
  }
  if (const auto* g = std::get_if<StateScaledGaussian>(&noise)) {
    return 0.5 * (g->nu1 * g->nu1 * x.squaredNorm() + g->nu2 * g->nu2);
  }
  return 0.0;
}

namespace detail {

// Adds `count` noise draws at x into acc (sum, not mean).
inline void accumulate_noise(const NoiseModel& noise, const Vector& x, std::int64_t count,
                             Rng& rng, Vector& acc) {
  if (const auto* a = std::get_if<AdditiveUniform>(&noise)) {
    const int groups = group_count(*a);
    std::vector<double> sums(static_cast<std::size_t>(groups), 0.0);
    for (std::int64_t j = 0; j < count; ++j) {
      for (int g = 0; g < groups; ++g) sums[static_cast<std::size_t>(g)] += rng.uniform(-1.0, 1.0);
    }
    for (Index i = 0; i < acc.size(); ++i) {
      const int g = a->group[static_cast<std::size_t>(i)];
      if (g >= 0) acc[i] += a->half_width[i] * sums[static_cast<std::size_t>(g)];
    }
  } else if (const auto* gs = std::get_if<StateScaledGaussian>(&noise)) {
    const double xn = x.norm();
    const Index n = acc.size();
    Vector u(n);
    for (std::int64_t j = 0; j < count; ++j) {
      const double g1 = rng.normal();
      const double g2 = rng.normal();
      double nrm = 0.0;
      do {
        for (Index i = 0; i < n; ++i) u[i] = rng.normal();
        nrm = u.norm();
      } while (nrm == 0.0);
      const double scale = (gs->nu1 * xn * g1 + gs->nu2 * g2) / std::sqrt(2.0) / nrm;
      acc += scale * u;
    }
  }
}

}  // namespace detail

// Draws one noise vector w at x.
inline Vector draw_noise(const NoiseModel& noise, const Vector& x, Rng& rng) {
  Vector w = Vector::Zero(x.size());
  detail::accumulate_noise(noise, x, 1, rng, w);
  return w;
}

// Sampled map with an exact count of single-sample draws.
class StochasticOracle {
 public:
  StochasticOracle(AffineMonotoneMap map, NoiseModel noise)
      : map_(std::move(map)), noise_(std::move(noise)) {
    validate_noise(noise_, map_.dim());
  }

  const AffineMonotoneMap& map() const { return map_; }
  const NoiseModel& noise() const { return noise_; }
  std::int64_t sample_counter() const { return samples_; }
  bool noiseless() const { return std::holds_alternative<NoNoise>(noise_); }

  // F(x) + w; one draw.
  Vector sample(const Vector& x, Rng& rng) {
    Vector out = map_(x);
    if (!noiseless()) {
      Vector w = Vector::Zero(x.size());
      detail::accumulate_noise(noise_, x, 1, rng, w);
      out += w;
    }
    ++samples_;
    return out;
  }

  // Mean of n independent samples at x; n draws. For n == 1 the result is
  // bitwise equal to sample(x, rng) on the same stream.
  Vector batch_average(const Vector& x, std::int64_t n, Rng& rng) {
    if (n < 1) throw DomainError("batch_average: batch size must be >= 1");
    Vector out = map_(x);
    if (!noiseless()) {
      Vector w = Vector::Zero(x.size());
      detail::accumulate_noise(noise_, x, n, rng, w);
      out += w / static_cast<double>(n);
    }
    samples_ += n;
    return out;
  }

 private:
  AffineMonotoneMap map_;
  NoiseModel noise_;
  std::int64_t samples_ = 0;
};

inline Vector sample(StochasticOracle& oracle, const Vector& x, Rng& rng) {
  return oracle.sample(x, rng);
}

inline Vector batch_average(StochasticOracle& oracle, const Vector& x, std::int64_t n,
                            Rng& rng) {
  return oracle.batch_average(x, n, rng);
}

}  // namespace svi

#endif  // SVI_SAMPLING_HPP_
