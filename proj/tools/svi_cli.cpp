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

// svi: command-line front end.
//
//   svi run --config <file> [--out <dir>] [--parallel <n>]
//   svi gap --problem <file> --point <file>
//   svi compare <summary.csv>...
//   svi validate --config <file>
//   svi export-problem --config <file> --out <file>
//
// Exit codes: 0 ok, 2 config error, 3 divergence in a trial, 4 internal error.

#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "svi/experiment/config.hpp"
#include "svi/experiment/experiment.hpp"
#include "svi/experiment/report.hpp"
#include "svi/metrics.hpp"
#include "svi/problem_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitInternal = 4;

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw svi::ConfigError("cannot read '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// Whitespace-separated numbers; '#' starts a comment.
svi::Vector read_point(const std::string& path) {
  std::istringstream in(slurp(path));
  std::vector<double> v;
  std::string line;
  while (std::getline(in, line)) {
    line = line.substr(0, line.find('#'));
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) v.push_back(svi::parse_double(tok));
  }
  return Eigen::Map<const svi::Vector>(v.data(), static_cast<svi::Index>(v.size()));
}

int cmd_run(const std::string& config_path, const std::string& out, int parallel) {
  svi::ExperimentConfig c = svi::parse_config(slurp(config_path));
  if (!out.empty()) c.output_dir = out;
  if (parallel > 0) c.parallelism = parallel;
  const auto res = svi::run_experiment(c);
  std::cout << svi::compare_report({res.summary});
  std::cout << "wrote " << res.records.size() << " trial(s) to " << c.output_dir << "\n";
  if (res.any_diverged) {
    for (const auto& r : res.records) {
      if (r.diverged) std::cerr << r.meta.scheme << " seed " << r.meta.seed << ": " << r.message << "\n";
    }
    return kExitDiverged;
  }
  return kExitOk;
}

int cmd_gap(const std::string& problem_path, const std::string& point_path) {
  svi::ViProblem p = [&] {
    try {
      return svi::read_problem(slurp(problem_path));
    } catch (const svi::ParseError& e) {
      throw svi::ConfigError(e.what());
    }
  }();
  const svi::Vector x = read_point(point_path);
  if (x.size() != p.dim()) {
    throw svi::ConfigError("point has " + std::to_string(x.size()) + " entries, problem dimension is " +
                           std::to_string(p.dim()));
  }
  const auto g = svi::gap(p, x);
  std::cout << "gap " << svi::format_double(g.value) << "\n"
            << "certificate_residual " << svi::format_double(g.certificate_residual) << "\n"
            << "iterations " << g.iterations_used << "\n"
            << "dist_X " << svi::format_double(svi::dist_to_set(p.feasible_set, x)) << "\n";
  return kExitOk;
}

int cmd_compare(const std::vector<std::string>& paths) {
  std::vector<std::vector<svi::SummaryRow>> all;
  for (const auto& p : paths) {
    try {
      all.push_back(svi::read_summary_csv(slurp(p)));
    } catch (const svi::ParseError& e) {
      throw svi::ConfigError(p + ": " + e.what());
    }
  }
  try {
    std::cout << svi::compare_report(all);
  } catch (const svi::DomainError& e) {
    throw svi::ConfigError(e.what());
  }
  return kExitOk;
}

int cmd_validate(const std::string& config_path) {
  const svi::ExperimentConfig c = svi::parse_config(slurp(config_path));
  std::cout << "ok: " << c.schemes.size() << " scheme(s), config " << c.hash << "\n";
  return kExitOk;
}

int cmd_export(const std::string& config_path, const std::string& out) {
  const svi::ExperimentConfig c = svi::parse_config(slurp(config_path));
  svi::save_problem_file(svi::build_problem(c.problem).problem, out);
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic solvers for monotone affine variational inequalities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", svi::kVersion);

  std::string config;
  std::string out;
  int parallel = 0;
  auto* run = app.add_subcommand("run", "run an experiment grid");
  run->add_option("--config", config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "output directory (overrides output_dir)");
  run->add_option("--parallel", parallel, "max concurrent trials")->check(CLI::PositiveNumber);

  std::string problem;
  std::string point;
  auto* gap = app.add_subcommand("gap", "estimate the gap of a point");
  gap->add_option("--problem", problem, "problem file")->required()->check(CLI::ExistingFile);
  gap->add_option("--point", point, "point file")->required()->check(CLI::ExistingFile);

  std::vector<std::string> summaries;
  auto* cmp = app.add_subcommand("compare", "tabulate summary files");
  cmp->add_option("summaries", summaries, "summary.csv files")->required()->check(CLI::ExistingFile);

  auto* val = app.add_subcommand("validate", "check a config without running it");
  val->add_option("--config", config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);

  std::string export_out;
  auto* exp = app.add_subcommand("export-problem", "write the configured problem to a file");
  exp->add_option("--config", config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  exp->add_option("--out", export_out, "problem file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config, out, parallel);
    if (*gap) return cmd_gap(problem, point);
    if (*cmp) return cmd_compare(summaries);
    if (*val) return cmd_validate(config);
    if (*exp) return cmd_export(config, export_out);
  } catch (const svi::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const svi::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
