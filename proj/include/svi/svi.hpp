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

// Everything. The experiment headers additionally need nlohmann_json.

#ifndef SVI_SVI_HPP_
#define SVI_SVI_HPP_

#include "svi/affine_map.hpp"
#include "svi/common.hpp"
#include "svi/constraint_family.hpp"
#include "svi/metrics.hpp"
#include "svi/problem.hpp"
#include "svi/problem_io.hpp"
#include "svi/problems/cournot.hpp"
#include "svi/problems/markov.hpp"
#include "svi/problems/synthetic.hpp"
#include "svi/projector.hpp"
#include "svi/rng.hpp"
#include "svi/run.hpp"
#include "svi/run_record.hpp"
#include "svi/sampling.hpp"
#include "svi/schedules.hpp"
#include "svi/set_descriptor.hpp"
#include "svi/solver.hpp"
#include "svi/solver_kind.hpp"

#endif  // SVI_SVI_HPP_
