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

// Experiment configuration, read from JSON. Parsing is strict: unknown keys
// and wrong types are errors. See README.md for the full key list.

#ifndef SVI_EXPERIMENT_CONFIG_HPP_
#define SVI_EXPERIMENT_CONFIG_HPP_

#include <cstdint>
#include <cstdio>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "svi/common.hpp"
#include "svi/metrics.hpp"
#include "svi/problem.hpp"
#include "svi/problem_io.hpp"
#include "svi/problems/cournot.hpp"
#include "svi/problems/markov.hpp"
#include "svi/problems/synthetic.hpp"
#include "svi/run.hpp"
#include "svi/sampling.hpp"
#include "svi/schedules.hpp"
#include "svi/solver_kind.hpp"

namespace svi {

using Json = nlohmann::json;

struct ProblemConfig {
  std::string kind = "cournot";  // cournot | markov | synthetic | file
  CournotSpec cournot = CournotSpec::defaults();
  MarkovSpec markov = MarkovSpec::desk();
  std::string synthetic = "interior";
  Index synthetic_n = 2;
  std::uint64_t synthetic_seed = 1;
  std::string path;
  // Replaces the problem's default noise when set.
  std::optional<NoiseModel> noise;
  bool reference = true;
  double reference_tol = 1e-12;
};

struct ExperimentConfig {
  ProblemConfig problem;
  std::vector<SolverKind> schemes;
  StepSchedule step = StepSchedule::constant(0.1);
  // Step used by the random-projection schemes; falls back to `step`.
  std::optional<StepSchedule> rp_step;
  BatchSchedule batch = BatchSchedule::polynomial(1.1);
  std::int64_t iterations = 1000;
  std::vector<std::int64_t> checkpoints;  // explicit list, or
  int log_checkpoints = 20;               // log-spaced count
  std::vector<std::uint64_t> seeds;       // explicit seeds, or
  std::uint64_t master_seed = 1;          // trials 0..n_trials-1 of master_seed
  int n_trials = 1;
  std::int64_t kbar = 0;
  std::string output_dir = "svi-out";
  int parallelism = 1;
  bool assume_rp_stepsize_admissible = false;
  bool project_at_checkpoints_only = true;
  std::optional<Vector> x0;
  bool compute_gap = true;
  GapOptions gap;
  std::string hash;  // of the canonical JSON text minus output_dir, parallelism
};

namespace detail {

inline void check_keys(const Json& j, const std::string& where, std::set<std::string> allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) throw ConfigError(where + ": unknown key '" + k + "'");
  }
}

template <typename T>
T get(const Json& j, const std::string& key, const std::string& where) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <typename T>
void get_opt(const Json& j, const std::string& key, const std::string& where, T& out) {
  if (j.contains(key)) out = get<T>(j, key, where);
}

inline Vector get_vector(const Json& j, const std::string& key, const std::string& where) {
  const auto v = get<std::vector<double>>(j, key, where);
  return Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size()));
}

inline std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline StepSchedule parse_step(const Json& j, const std::string& where) {
  check_keys(j, where, {"kind", "gamma", "gamma0", "t"});
  const auto kind = get<std::string>(j, "kind", where);
  try {
    if (kind == "constant") return StepSchedule::constant(get<double>(j, "gamma", where));
    if (kind == "diminishing") {
      double t = 1.0;
      get_opt(j, "t", where, t);
      return StepSchedule::diminishing(get<double>(j, "gamma0", where), t);
    }
  } catch (const DomainError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError(where + ".kind: expected 'constant' or 'diminishing'");
}

inline BatchSchedule parse_batch(const Json& j, const std::string& where) {
  check_keys(j, where, {"exponent", "n_min", "constant"});
  try {
    if (j.contains("constant")) {
      if (j.contains("exponent")) throw ConfigError(where + ": 'constant' excludes 'exponent'");
      return BatchSchedule::constant(get<std::int64_t>(j, "constant", where));
    }
    std::int64_t n_min = 1;
    get_opt(j, "n_min", where, n_min);
    return BatchSchedule::polynomial(get<double>(j, "exponent", where), n_min);
  } catch (const DomainError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

inline NoiseModel parse_noise(const Json& j, const std::string& where) {
  check_keys(j, where, {"kind", "nu1", "nu2"});
  const auto kind = get<std::string>(j, "kind", where);
  if (kind == "none") return NoNoise{};
  if (kind == "state-scaled-gaussian") {
    StateScaledGaussian g;
    get_opt(j, "nu1", where, g.nu1);
    get_opt(j, "nu2", where, g.nu2);
    if (!(g.nu1 >= 0.0) || !(g.nu2 >= 0.0)) throw ConfigError(where + ": nu1, nu2 must be >= 0");
    return g;
  }
  throw ConfigError(where + ".kind: expected 'none' or 'state-scaled-gaussian'");
}

inline ProblemConfig parse_problem(const Json& j) {
  const std::string w = "problem";
  check_keys(j, w,
             {"kind", "firms", "nodes", "cap", "cost", "slope", "a_mean", "a_halfwidth",
              "n_states", "r_dims", "p_seed", "features", "name", "n", "seed", "path", "noise",
              "reference", "reference_tol"});
  ProblemConfig p;
  p.kind = get<std::string>(j, "kind", w);
  auto only = [&](std::set<std::string> keys) {
    keys.insert({"kind", "noise", "reference", "reference_tol"});
    for (const auto& [k, v] : j.items()) {
      if (!keys.count(k)) throw ConfigError(w + ": key '" + k + "' does not apply to " + p.kind);
    }
  };
  if (p.kind == "cournot") {
    only({"firms", "nodes", "cap", "cost", "slope", "a_mean", "a_halfwidth"});
    int firms = 5;
    int nodes = 4;
    double cap = 300.0;
    double cost = 1.5;
    double slope = 0.05;
    double a_mean = 50.0;
    double a_half = 0.5;
    get_opt(j, "firms", w, firms);
    get_opt(j, "nodes", w, nodes);
    get_opt(j, "cap", w, cap);
    get_opt(j, "cost", w, cost);
    get_opt(j, "slope", w, slope);
    get_opt(j, "a_mean", w, a_mean);
    get_opt(j, "a_halfwidth", w, a_half);
    try {
      p.cournot = CournotSpec::uniform(firms, nodes, cap, cost, slope, a_mean, a_half);
      validate_cournot(p.cournot);
    } catch (const DomainError& e) {
      throw ConfigError(w + ": " + e.what());
    }
  } else if (p.kind == "markov") {
    only({"n_states", "r_dims", "p_seed", "features"});
    get_opt(j, "n_states", w, p.markov.n_states);
    get_opt(j, "r_dims", w, p.markov.r_dims);
    get_opt(j, "p_seed", w, p.markov.p_seed);
    get_opt(j, "features", w, p.markov.feature_kind);
    if (p.markov.r_dims < 1 || p.markov.r_dims > p.markov.n_states) {
      throw ConfigError(w + ": need 1 <= r_dims <= n_states");
    }
    if (p.markov.feature_kind != "sinusoidal") throw ConfigError(w + ".features: only 'sinusoidal'");
  } else if (p.kind == "synthetic") {
    only({"name", "n", "seed"});
    p.synthetic = get<std::string>(j, "name", w);
    synthetic_kind_from_string(p.synthetic);
    get_opt(j, "n", w, p.synthetic_n);
    get_opt(j, "seed", w, p.synthetic_seed);
  } else if (p.kind == "file") {
    only({"path"});
    p.path = get<std::string>(j, "path", w);
  } else {
    throw ConfigError(w + ".kind: expected cournot, markov, synthetic or file");
  }
  if (j.contains("noise")) p.noise = parse_noise(j.at("noise"), w + ".noise");
  get_opt(j, "reference", w, p.reference);
  get_opt(j, "reference_tol", w, p.reference_tol);
  return p;
}

inline ProblemInstance build_base_problem(const ProblemConfig& pc) {
  if (pc.kind == "cournot") return build_cournot(pc.cournot);
  if (pc.kind == "markov") return build_markov(pc.markov);
  if (pc.kind == "synthetic") {
    Rng rng(pc.synthetic_seed);
    return ProblemInstance{
        build_synthetic(synthetic_kind_from_string(pc.synthetic), pc.synthetic_n, rng), NoNoise{}};
  }
  if (pc.kind == "file") return ProblemInstance{load_problem_file(pc.path), NoNoise{}};
  throw ConfigError("unknown problem kind '" + pc.kind + "'");
}

}  // namespace detail

// Builds the configured problem; with `with_reference` a reference solution
// is computed unless the problem already carries one.
inline ProblemInstance build_problem(const ProblemConfig& pc, bool with_reference = true) {
  ProblemInstance inst = detail::build_base_problem(pc);
  if (pc.noise) inst.noise = *pc.noise;
  if (with_reference && pc.reference && !inst.problem.reference_solution) {
    ReferenceOptions ro;
    ro.tol = pc.reference_tol;
    inst.problem.reference_solution = reference_solve(inst.problem, ro);
  }
  return inst;
}

// Parses without building the problem.
inline ExperimentConfig parse_config_unchecked(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  const std::string w = "config";
  detail::check_keys(j, w,
                     {"problem", "schemes", "step", "rp_step", "batch", "iterations",
                      "checkpoints", "seeds", "kbar", "output_dir", "parallelism",
                      "assume_rp_stepsize_admissible", "project_at_checkpoints_only", "x0",
                      "compute_gap", "gap"});
  ExperimentConfig c;
  // Where and how wide a run executes does not change its numbers.
  Json hashed = j;
  hashed.erase("output_dir");
  hashed.erase("parallelism");
  c.hash = detail::fnv1a_hex(hashed.dump());
  if (!j.contains("problem")) throw ConfigError("config: missing 'problem'");
  c.problem = detail::parse_problem(j.at("problem"));

  const auto names = detail::get<std::vector<std::string>>(j, "schemes", w);
  if (names.empty()) throw ConfigError("config.schemes: must not be empty");
  for (const auto& n : names) c.schemes.push_back(solver_kind_from_string(n));

  if (j.contains("step")) c.step = detail::parse_step(j.at("step"), "config.step");
  if (j.contains("rp_step")) c.rp_step = detail::parse_step(j.at("rp_step"), "config.rp_step");
  if (j.contains("batch")) c.batch = detail::parse_batch(j.at("batch"), "config.batch");
  detail::get_opt(j, "iterations", w, c.iterations);
  if (c.iterations < 0) throw ConfigError("config.iterations: must be >= 0");

  if (j.contains("checkpoints")) {
    const Json& cp = j.at("checkpoints");
    if (cp.is_array()) {
      c.checkpoints = detail::get<std::vector<std::int64_t>>(j, "checkpoints", w);
      for (auto k : c.checkpoints) {
        if (k < 0 || k > c.iterations) throw ConfigError("config.checkpoints: must lie in [0, iterations]");
      }
    } else {
      detail::check_keys(cp, "config.checkpoints", {"log_spaced"});
      c.log_checkpoints = detail::get<int>(cp, "log_spaced", "config.checkpoints");
      if (c.log_checkpoints < 1) throw ConfigError("config.checkpoints.log_spaced: must be >= 1");
    }
  }
  if (j.contains("seeds")) {
    const Json& s = j.at("seeds");
    if (s.is_array()) {
      c.seeds = detail::get<std::vector<std::uint64_t>>(j, "seeds", w);
      if (c.seeds.empty()) throw ConfigError("config.seeds: must not be empty");
    } else {
      detail::check_keys(s, "config.seeds", {"master_seed", "n_trials"});
      detail::get_opt(s, "master_seed", "config.seeds", c.master_seed);
      c.n_trials = detail::get<int>(s, "n_trials", "config.seeds");
      if (c.n_trials < 1) throw ConfigError("config.seeds.n_trials: must be >= 1");
    }
  }
  detail::get_opt(j, "kbar", w, c.kbar);
  if (c.kbar < 0) throw ConfigError("config.kbar: must be >= 0");
  detail::get_opt(j, "output_dir", w, c.output_dir);
  detail::get_opt(j, "parallelism", w, c.parallelism);
  if (c.parallelism < 1) throw ConfigError("config.parallelism: must be >= 1");
  detail::get_opt(j, "assume_rp_stepsize_admissible", w, c.assume_rp_stepsize_admissible);
  detail::get_opt(j, "project_at_checkpoints_only", w, c.project_at_checkpoints_only);
  if (j.contains("x0")) c.x0 = detail::get_vector(j, "x0", w);
  detail::get_opt(j, "compute_gap", w, c.compute_gap);
  if (j.contains("gap")) {
    const Json& g = j.at("gap");
    detail::check_keys(g, "config.gap", {"tol", "max_iters", "starts", "seed"});
    detail::get_opt(g, "tol", "config.gap", c.gap.tol);
    detail::get_opt(g, "max_iters", "config.gap", c.gap.max_iters);
    detail::get_opt(g, "starts", "config.gap", c.gap.starts);
    detail::get_opt(g, "seed", "config.gap", c.gap.seed);
  }
  return c;
}

// Options for one scheme of the experiment.
inline RunOptions run_options_for(const ExperimentConfig& c, SolverKind kind) {
  RunOptions o;
  o.step = (is_random_projection(kind) && c.rp_step) ? *c.rp_step : c.step;
  o.batch = c.batch;
  o.iterations = c.iterations;
  o.checkpoints =
      c.checkpoints.empty() ? log_spaced_checkpoints(c.iterations, c.log_checkpoints) : c.checkpoints;
  o.kbar = c.kbar;
  o.project_at_checkpoints_only = c.project_at_checkpoints_only;
  o.assume_rp_stepsize_admissible = c.assume_rp_stepsize_admissible;
  o.x0 = c.x0;
  o.compute_gap = c.compute_gap;
  o.gap = c.gap;
  o.meta.config_hash = c.hash;
  return o;
}

// Checks every scheme against the built problem; throws ConfigError naming
// the scheme, the bound and the offending step.
inline void validate_config(const ExperimentConfig& c, const ProblemInstance& inst) {
  if (c.x0 && c.x0->size() != inst.problem.dim()) {
    throw ConfigError("config.x0: expected " + std::to_string(inst.problem.dim()) + " entries, got " +
                      std::to_string(c.x0->size()));
  }
  for (SolverKind k : c.schemes) {
    if (is_random_projection(k) && !inst.problem.constraint_family) {
      throw ConfigError(std::string(to_string(k)) + ": problem has no constraint family");
    }
    check_admissible(k, inst.problem, inst.noise, run_options_for(c, k));
  }
}

// Parses and validates: the problem is built (without a reference solution)
// so that every scheme's step can be checked against its admissible bound.
inline ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c = parse_config_unchecked(text);
  ProblemInstance inst = [&] {
    try {
      return build_problem(c.problem, false);
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(std::string("problem: ") + e.what());
    }
  }();
  validate_config(c, inst);
  return c;
}

}  // namespace svi

#endif  // SVI_EXPERIMENT_CONFIG_HPP_
