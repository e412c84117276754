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

// Flat text serialization of a ViProblem.
//
//   # svi-problem v1
//   [map]
//   n <dim>
//   row <n numbers>            (exactly n lines, row-major M)
//   offset <n numbers>         (d)
//   [set]
//   <set descriptor>           (may span lines; see set_descriptor.hpp)
//   [family]                   (optional)
//   weights <m numbers>        (optional, default uniform)
//   member <set descriptor>    (one line per member X_i)
//   [meta]
//   id <token>
//   lipschitz <number>
//   diameter <number | unknown>
//   reference <n numbers>      (optional)
//   weak_sharpness <number>    (optional)
//
// Lines starting with '#' are comments. Numbers use 17 significant digits,
// so write/read round-trips finite doubles exactly. The [family] full set is
// the [set] projector.

#ifndef SVI_PROBLEM_IO_HPP_
#define SVI_PROBLEM_IO_HPP_

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "svi/common.hpp"
#include "svi/problem.hpp"
#include "svi/set_descriptor.hpp"

namespace svi {

inline std::string write_problem(const ViProblem& p) {
  std::ostringstream out;
  const Index n = p.dim();
  out << "# svi-problem v1\n[map]\nn " << n << "\n";
  for (Index i = 0; i < n; ++i) {
    out << "row";
    for (Index j = 0; j < n; ++j) out << ' ' << format_double(p.map.matrix()(i, j));
    out << "\n";
  }
  out << "offset";
  for (Index i = 0; i < n; ++i) out << ' ' << format_double(p.map.offset()[i]);
  out << "\n[set]\n" << print_set_descriptor(p.feasible_set) << "\n";
  if (p.constraint_family) {
    out << "[family]\nweights";
    for (double w : p.constraint_family->weights()) out << ' ' << format_double(w);
    out << "\n";
    for (const auto& m : p.constraint_family->members()) {
      out << "member " << print_set_descriptor(m) << "\n";
    }
  }
  out << "[meta]\nid " << (p.id.empty() ? "unnamed" : p.id) << "\n";
  out << "lipschitz " << format_double(p.lipschitz) << "\n";
  out << "diameter " << (p.diameter_bound ? format_double(*p.diameter_bound) : "unknown") << "\n";
  if (p.reference_solution) {
    out << "reference";
    for (Index i = 0; i < n; ++i) out << ' ' << format_double((*p.reference_solution)[i]);
    out << "\n";
  }
  if (p.weak_sharpness) out << "weak_sharpness " << format_double(*p.weak_sharpness) << "\n";
  return out.str();
}

namespace detail {

inline std::vector<double> read_numbers(std::istringstream& in) {
  std::vector<double> v;
  std::string tok;
  while (in >> tok) v.push_back(parse_double(tok));
  return v;
}

}  // namespace detail

inline ViProblem read_problem(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  std::string section;
  Index n = -1;
  std::vector<std::vector<double>> rows;
  std::vector<double> offset;
  std::string set_text;
  std::vector<std::string> member_texts;
  std::vector<double> weights;
  std::string id;
  std::optional<double> lipschitz;
  std::optional<double> diameter;
  bool diameter_seen = false;
  std::optional<Vector> reference;
  std::optional<double> sharp;

  auto fail = [](const std::string& m) -> ParseError { return ParseError("problem file: " + m); };

  while (std::getline(lines, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string trimmed = line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (trimmed.front() == '[' && trimmed.back() == ']') {
      section = trimmed.substr(1, trimmed.size() - 2);
      if (section != "map" && section != "set" && section != "family" && section != "meta") {
        throw fail("unknown section [" + section + "]");
      }
      continue;
    }
    if (section == "set") {
      set_text += trimmed + " ";
      continue;
    }
    std::istringstream in(trimmed);
    std::string key;
    in >> key;
    if (section == "map") {
      if (key == "n") {
        std::string v;
        in >> v;
        n = static_cast<Index>(parse_double(v));
      } else if (key == "row") {
        rows.push_back(detail::read_numbers(in));
      } else if (key == "offset") {
        offset = detail::read_numbers(in);
      } else {
        throw fail("unknown [map] key '" + key + "'");
      }
    } else if (section == "family") {
      if (key == "weights") {
        weights = detail::read_numbers(in);
      } else if (key == "member") {
        std::string rest;
        std::getline(in, rest);
        member_texts.push_back(rest);
      } else {
        throw fail("unknown [family] key '" + key + "'");
      }
    } else if (section == "meta") {
      std::string v;
      if (key == "id") {
        in >> id;
      } else if (key == "lipschitz") {
        in >> v;
        lipschitz = parse_double(v);
      } else if (key == "diameter") {
        in >> v;
        diameter_seen = true;
        if (v != "unknown") diameter = parse_double(v);
      } else if (key == "reference") {
        const auto r = detail::read_numbers(in);
        reference = Eigen::Map<const Vector>(r.data(), static_cast<Index>(r.size()));
      } else if (key == "weak_sharpness") {
        in >> v;
        sharp = parse_double(v);
      } else {
        throw fail("unknown [meta] key '" + key + "'");
      }
    } else {
      throw fail("content outside of a section: '" + trimmed + "'");
    }
  }

  if (n < 0) throw fail("missing 'n' in [map]");
  if (static_cast<Index>(rows.size()) != n) throw fail("expected n rows in [map]");
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    if (static_cast<Index>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw fail("row " + std::to_string(i) + " has wrong length");
    }
    for (Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  if (static_cast<Index>(offset.size()) != n) throw fail("offset has wrong length");
  if (set_text.empty()) throw fail("missing [set]");
  if (!lipschitz) throw fail("missing 'lipschitz' in [meta]");
  if (!diameter_seen) throw fail("missing 'diameter' in [meta]");

  Vector d = Eigen::Map<const Vector>(offset.data(), n);
  Projector set = parse_set_descriptor(set_text);
  std::optional<ConstraintFamily> family;
  if (!member_texts.empty()) {
    std::vector<Projector> members;
    for (const auto& t : member_texts) members.push_back(parse_set_descriptor(t));
    family.emplace(std::move(members), weights, set);
  } else if (!weights.empty()) {
    throw fail("[family] weights without members");
  }
  ViProblem p{id, AffineMonotoneMap(std::move(m), std::move(d)), std::move(set),
              std::move(family), *lipschitz, diameter, std::move(reference), sharp};
  if (p.id == "unnamed") p.id.clear();
  require_dim("feasible set", p.dim(), p.feasible_set.dim());
  if (p.reference_solution) require_dim("reference", p.dim(), p.reference_solution->size());
  return p;
}

inline ViProblem load_problem_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open problem file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return read_problem(ss.str());
}

inline void save_problem_file(const ViProblem& p, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write problem file '" + path + "'");
  f << write_problem(p);
}

}  // namespace svi

#endif  // SVI_PROBLEM_IO_HPP_
