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

// Runs a (scheme x seed) grid on a bounded pool of worker threads.
//
// Output layout under output_dir:
//   <scheme>_seed<id>.csv   one run record per trial, no timing column
//   timings.csv             elapsed_ms per trial and checkpoint
//   summary.csv             medians/means across seeds per checkpoint
//   manifest.json           config hash, version, per-trial status, wall times

#ifndef SVI_EXPERIMENT_EXPERIMENT_HPP_
#define SVI_EXPERIMENT_EXPERIMENT_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "svi/experiment/config.hpp"
#include "svi/experiment/report.hpp"
#include "svi/run.hpp"
#include "svi/run_record.hpp"

namespace svi {

struct Trial {
  SolverKind kind;
  std::uint64_t seed_id;  // file name and RunMeta::seed
  Rng rng;
};

struct ExperimentResult {
  std::vector<RunRecord> records;  // in (scheme, seed) order
  std::vector<SummaryRow> summary;
  std::vector<double> trial_wall_ms;
  double wall_ms = 0.0;
  bool any_diverged = false;
};

// Schemes outer, seeds inner. Listed seeds give streams Rng(seed); otherwise
// trial t uses Rng::for_trial(master_seed, t) and is named by t.
inline std::vector<Trial> make_trials(const ExperimentConfig& c) {
  std::vector<Trial> out;
  for (SolverKind k : c.schemes) {
    if (!c.seeds.empty()) {
      for (std::uint64_t s : c.seeds) out.push_back({k, s, Rng(s)});
    } else {
      for (int t = 0; t < c.n_trials; ++t) {
        out.push_back({k, static_cast<std::uint64_t>(t),
                       Rng::for_trial(c.master_seed, static_cast<std::uint64_t>(t))});
      }
    }
  }
  return out;
}

inline std::string trial_file_name(const RunMeta& m) {
  return m.scheme + "_seed" + std::to_string(m.seed) + ".csv";
}

// Executes every trial against `inst`. Nothing is written to disk.
inline ExperimentResult run_trials(const ExperimentConfig& c, const ProblemInstance& inst) {
  validate_config(c, inst);
  std::vector<Trial> trials = make_trials(c);
  ExperimentResult res;
  res.records.resize(trials.size());
  res.trial_wall_ms.assign(trials.size(), 0.0);
  std::vector<std::exception_ptr> errors(trials.size());

  const auto t0 = std::chrono::steady_clock::now();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < trials.size(); i = next++) {
      Trial& t = trials[i];
      RunOptions opt = run_options_for(c, t.kind);
      opt.meta.seed = t.seed_id;
      const auto ts = std::chrono::steady_clock::now();
      try {
        res.records[i] = run(inst, t.kind, t.rng, opt);
      } catch (const RunDivergedError& e) {
        res.records[i] = e.record();
      } catch (...) {
        errors[i] = std::current_exception();
      }
      res.trial_wall_ms[i] =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - ts).count();
    }
  };
  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(c.parallelism), trials.size());
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  res.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& r : res.records) res.any_diverged = res.any_diverged || r.diverged;
  res.summary = summarize(res.records);
  return res;
}

inline std::string write_timings_csv(const ExperimentResult& res) {
  std::ostringstream out;
  out << "scheme,seed,k,elapsed_ms\n";
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    const auto& r = res.records[i];
    for (const auto& row : r.rows) {
      out << r.meta.scheme << ',' << r.meta.seed << ',' << row.k << ','
          << detail::csv_number(row.elapsed_ms) << "\n";
    }
    out << r.meta.scheme << ',' << r.meta.seed << ",total," << format_double(res.trial_wall_ms[i])
        << "\n";
  }
  return out.str();
}

inline std::string write_manifest(const ExperimentConfig& c, const ExperimentResult& res,
                                  const ProblemInstance& inst) {
  nlohmann::ordered_json j;
  j["svi_version"] = kVersion;
  j["config_hash"] = c.hash;
  j["problem"] = inst.problem.id;
  j["lipschitz"] = inst.problem.lipschitz;
  std::vector<std::string> schemes;
  for (SolverKind k : c.schemes) schemes.emplace_back(to_string(k));
  j["schemes"] = schemes;
  j["iterations"] = c.iterations;
  j["parallelism"] = c.parallelism;
  j["wall_ms"] = res.wall_ms;
  j["any_diverged"] = res.any_diverged;
  auto trials = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    const auto& r = res.records[i];
    nlohmann::ordered_json t;
    t["scheme"] = r.meta.scheme;
    t["seed"] = r.meta.seed;
    t["file"] = trial_file_name(r.meta);
    t["diverged"] = r.diverged;
    if (r.diverged) t["message"] = r.message;
    t["wall_ms"] = res.trial_wall_ms[i];
    trials.push_back(t);
  }
  j["trials"] = trials;
  return j.dump(2) + "\n";
}

namespace detail {

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error("cannot write '" + p.string() + "'");
  f << text;
}

}  // namespace detail

// Runs the grid and writes the output files; `inst` must be the problem the
// config describes (with its reference solution, if err_ref is wanted).
inline ExperimentResult run_experiment(const ExperimentConfig& c, const ProblemInstance& inst) {
  ExperimentResult res = run_trials(c, inst);
  const std::filesystem::path dir(c.output_dir);
  std::filesystem::create_directories(dir);
  for (const auto& r : res.records) detail::write_text(dir / trial_file_name(r.meta), write_run_csv(r));
  detail::write_text(dir / "timings.csv", write_timings_csv(res));
  detail::write_text(dir / "summary.csv", write_summary_csv(res.summary));
  detail::write_text(dir / "manifest.json", write_manifest(c, res, inst));
  return res;
}

inline ExperimentResult run_experiment(const ExperimentConfig& c) {
  return run_experiment(c, build_problem(c.problem));
}

}  // namespace svi

#endif  // SVI_EXPERIMENT_EXPERIMENT_HPP_
