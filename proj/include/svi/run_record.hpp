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

// CSV form of a RunRecord. Row 0 is a schema comment; NaN is an empty field.

#ifndef SVI_RUN_RECORD_HPP_
#define SVI_RUN_RECORD_HPP_

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "svi/run.hpp"
#include "svi/set_descriptor.hpp"

namespace svi {

inline constexpr const char* kRunCsvSchema = "# svi-run-record v1";
inline constexpr const char* kRunCsvHeader =
    "k,proj_full,proj_member,proj_half,samples,gamma,N,gap_avg,dist_X_iter,dist_X_avg,err_ref,"
    "elapsed_ms";

namespace detail {

inline std::string csv_number(double v) { return std::isnan(v) ? std::string() : format_double(v); }

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

// With include_timing = false the elapsed_ms column is left empty so that
// reruns of one configuration produce identical bytes.
inline std::string write_run_csv(const RunRecord& rec, bool include_timing = false) {
  std::ostringstream out;
  out << kRunCsvSchema << " scheme=" << rec.meta.scheme << " seed=" << rec.meta.seed
      << " problem=" << rec.meta.problem_id << " config=" << rec.meta.config_hash << "\n";
  out << kRunCsvHeader << "\n";
  for (const RunRow& r : rec.rows) {
    out << r.k << ',' << r.proj_full << ',' << r.proj_member << ',' << r.proj_half << ','
        << r.samples << ',' << detail::csv_number(r.gamma) << ','
        << (r.batch > 0 ? std::to_string(r.batch) : std::string()) << ','
        << detail::csv_number(r.gap_avg) << ',' << detail::csv_number(r.dist_x_iter) << ','
        << detail::csv_number(r.dist_x_avg) << ',' << detail::csv_number(r.err_ref) << ','
        << (include_timing ? detail::csv_number(r.elapsed_ms) : std::string()) << "\n";
  }
  return out.str();
}

inline std::vector<RunRow> read_run_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<RunRow> rows;
  bool header = false;
  auto num = [](const std::string& f) { return f.empty() ? kNaN : parse_double(f); };
  auto integer = [](const std::string& f) -> std::int64_t {
    return f.empty() ? 0 : static_cast<std::int64_t>(std::stoll(f));
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      if (line != kRunCsvHeader) throw ParseError("run csv: unexpected header '" + line + "'");
      header = true;
      continue;
    }
    const auto f = detail::split_csv(line);
    if (f.size() != 12) throw ParseError("run csv: expected 12 fields");
    RunRow r;
    r.k = integer(f[0]);
    r.proj_full = integer(f[1]);
    r.proj_member = integer(f[2]);
    r.proj_half = integer(f[3]);
    r.samples = integer(f[4]);
    r.gamma = num(f[5]);
    r.batch = integer(f[6]);
    r.gap_avg = num(f[7]);
    r.dist_x_iter = num(f[8]);
    r.dist_x_avg = num(f[9]);
    r.err_ref = num(f[10]);
    r.elapsed_ms = num(f[11]);
    rows.push_back(r);
  }
  if (!header) throw ParseError("run csv: missing header");
  return rows;
}

}  // namespace svi

#endif  // SVI_RUN_RECORD_HPP_
