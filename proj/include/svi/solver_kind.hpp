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

#ifndef SVI_SOLVER_KIND_HPP_
#define SVI_SOLVER_KIND_HPP_

#include <array>
#include <string>
#include <string_view>

#include "svi/common.hpp"

namespace svi {

enum class SolverKind { SPG, SEG, SPRG, SSE, V_SPRG, V_SSE, R_SPRG, R_SSE };

inline constexpr std::array<SolverKind, 8> kAllSolverKinds = {
    SolverKind::SPG,    SolverKind::SEG,   SolverKind::SPRG,   SolverKind::SSE,
    SolverKind::V_SPRG, SolverKind::V_SSE, SolverKind::R_SPRG, SolverKind::R_SSE};

inline std::string_view to_string(SolverKind k) {
  switch (k) {
    case SolverKind::SPG: return "spg";
    case SolverKind::SEG: return "seg";
    case SolverKind::SPRG: return "sprg";
    case SolverKind::SSE: return "sse";
    case SolverKind::V_SPRG: return "v-sprg";
    case SolverKind::V_SSE: return "v-sse";
    case SolverKind::R_SPRG: return "r-sprg";
    case SolverKind::R_SSE: return "r-sse";
  }
  return "?";
}

inline SolverKind solver_kind_from_string(std::string_view s) {
  for (SolverKind k : kAllSolverKinds) {
    if (to_string(k) == s) return k;
  }
  throw ConfigError("unknown scheme '" + std::string(s) + "'");
}

inline bool is_random_projection(SolverKind k) {
  return k == SolverKind::R_SPRG || k == SolverKind::R_SSE;
}

inline bool is_variance_reduced(SolverKind k) {
  return k == SolverKind::V_SPRG || k == SolverKind::V_SSE;
}

// Subgradient-extragradient family: second projection is onto a halfspace.
inline bool uses_halfspace(SolverKind k) {
  return k == SolverKind::SSE || k == SolverKind::V_SSE || k == SolverKind::R_SSE;
}

// Projections onto the full set X per iteration.
inline int full_projections_per_iteration(SolverKind k) {
  switch (k) {
    case SolverKind::SEG: return 2;
    case SolverKind::R_SPRG:
    case SolverKind::R_SSE: return 0;
    default: return 1;
  }
}

inline int member_projections_per_iteration(SolverKind k) {
  return is_random_projection(k) ? 1 : 0;
}

inline int halfspace_projections_per_iteration(SolverKind k) {
  return uses_halfspace(k) ? 1 : 0;
}

}  // namespace svi

#endif  // SVI_SOLVER_KIND_HPP_
