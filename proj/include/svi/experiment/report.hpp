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

// Cross-seed summaries and the table renderer.

#ifndef SVI_EXPERIMENT_REPORT_HPP_
#define SVI_EXPERIMENT_REPORT_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "svi/run.hpp"
#include "svi/run_record.hpp"
#include "svi/set_descriptor.hpp"

namespace svi {

struct SummaryRow {
  std::string scheme;
  std::int64_t k = 0;
  int n_trials = 0;
  int n_diverged = 0;
  double proj_full = kNaN;
  double proj_member = kNaN;
  double proj_half = kNaN;
  double samples = kNaN;
  double median_gap_avg = kNaN;
  double mean_gap_avg = kNaN;
  double median_dist_x_iter = kNaN;
  double mean_dist_x_iter = kNaN;
  double median_dist_x_avg = kNaN;
  double mean_dist_x_avg = kNaN;
  double median_err_ref = kNaN;
  double mean_err_ref = kNaN;
  double median_wall_ms = kNaN;
};

inline constexpr const char* kSummaryHeader =
    "scheme,k,n_trials,n_diverged,proj_full,proj_member,proj_half,samples,median_gap_avg,"
    "mean_gap_avg,median_dist_X_iter,mean_dist_X_iter,median_dist_X_avg,mean_dist_X_avg,"
    "median_err_ref,mean_err_ref,median_wall_ms";

// Median of the non-NaN entries; NaN when there are none.
inline double median(std::vector<double> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  int n = 0;
  for (double x : v) {
    if (!std::isnan(x)) {
      s += x;
      ++n;
    }
  }
  return n ? s / n : kNaN;
}

// One row per (scheme, checkpoint) over the records of that scheme. Diverged
// trials contribute the rows they completed.
inline std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<const RunRecord*>> by_scheme;
  for (const auto& r : records) {
    if (!by_scheme.count(r.meta.scheme)) order.push_back(r.meta.scheme);
    by_scheme[r.meta.scheme].push_back(&r);
  }
  std::vector<SummaryRow> out;
  for (const auto& scheme : order) {
    const auto& recs = by_scheme[scheme];
    std::map<std::int64_t, std::vector<const RunRow*>> by_k;
    int diverged = 0;
    for (const RunRecord* r : recs) {
      diverged += r->diverged ? 1 : 0;
      for (const auto& row : r->rows) by_k[row.k].push_back(&row);
    }
    for (const auto& [k, rows] : by_k) {
      auto col = [&](auto field) {
        std::vector<double> v;
        for (const RunRow* row : rows) v.push_back(static_cast<double>(field(*row)));
        return v;
      };
      SummaryRow s;
      s.scheme = scheme;
      s.k = k;
      s.n_trials = static_cast<int>(recs.size());
      s.n_diverged = diverged;
      s.proj_full = median(col([](const RunRow& r) { return r.proj_full; }));
      s.proj_member = median(col([](const RunRow& r) { return r.proj_member; }));
      s.proj_half = median(col([](const RunRow& r) { return r.proj_half; }));
      s.samples = median(col([](const RunRow& r) { return r.samples; }));
      const auto gap = col([](const RunRow& r) { return r.gap_avg; });
      const auto di = col([](const RunRow& r) { return r.dist_x_iter; });
      const auto da = col([](const RunRow& r) { return r.dist_x_avg; });
      const auto er = col([](const RunRow& r) { return r.err_ref; });
      s.median_gap_avg = median(gap);
      s.mean_gap_avg = mean(gap);
      s.median_dist_x_iter = median(di);
      s.mean_dist_x_iter = mean(di);
      s.median_dist_x_avg = median(da);
      s.mean_dist_x_avg = mean(da);
      s.median_err_ref = median(er);
      s.mean_err_ref = mean(er);
      s.median_wall_ms = median(col([](const RunRow& r) { return r.elapsed_ms; }));
      out.push_back(s);
    }
  }
  return out;
}

inline std::string write_summary_csv(const std::vector<SummaryRow>& rows, bool include_timing = true) {
  std::ostringstream out;
  out << kSummaryHeader << "\n";
  using detail::csv_number;
  for (const auto& s : rows) {
    out << s.scheme << ',' << s.k << ',' << s.n_trials << ',' << s.n_diverged << ','
        << csv_number(s.proj_full) << ',' << csv_number(s.proj_member) << ','
        << csv_number(s.proj_half) << ',' << csv_number(s.samples) << ','
        << csv_number(s.median_gap_avg) << ',' << csv_number(s.mean_gap_avg) << ','
        << csv_number(s.median_dist_x_iter) << ',' << csv_number(s.mean_dist_x_iter) << ','
        << csv_number(s.median_dist_x_avg) << ',' << csv_number(s.mean_dist_x_avg) << ','
        << csv_number(s.median_err_ref) << ',' << csv_number(s.mean_err_ref) << ','
        << (include_timing ? csv_number(s.median_wall_ms) : std::string()) << "\n";
  }
  return out.str();
}

inline std::vector<SummaryRow> read_summary_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kSummaryHeader) {
    throw ParseError("summary csv: unexpected header");
  }
  std::vector<SummaryRow> rows;
  auto num = [](const std::string& f) { return f.empty() ? kNaN : parse_double(f); };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = detail::split_csv(line);
    if (f.size() != 17) throw ParseError("summary csv: expected 17 fields");
    SummaryRow s;
    s.scheme = f[0];
    s.k = std::stoll(f[1]);
    s.n_trials = std::stoi(f[2]);
    s.n_diverged = std::stoi(f[3]);
    double* fields[] = {&s.proj_full,          &s.proj_member,       &s.proj_half,
                        &s.samples,            &s.median_gap_avg,    &s.mean_gap_avg,
                        &s.median_dist_x_iter, &s.mean_dist_x_iter,  &s.median_dist_x_avg,
                        &s.mean_dist_x_avg,    &s.median_err_ref,    &s.mean_err_ref,
                        &s.median_wall_ms};
    for (std::size_t i = 0; i < 13; ++i) *fields[i] = num(f[i + 4]);
    rows.push_back(s);
  }
  return rows;
}

// Two significant digits in the compact style 9.1e-3; "-" for NaN.
inline std::string format_sci2(double v) {
  if (std::isnan(v)) return "-";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0.0e0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1e", v);
  std::string s(buf);
  const auto e = s.find('e');
  std::string mant = s.substr(0, e);
  int exp = std::stoi(s.substr(e + 1));
  return mant + "e" + std::to_string(exp);
}

// One row per scheme at the last checkpoint: gap, error to the reference and
// median wall time. All summaries must share one checkpoint set.
inline std::string compare_report(const std::vector<std::vector<SummaryRow>>& summaries) {
  if (summaries.empty()) throw DomainError("compare_report: no summaries");
  std::vector<std::int64_t> ks;
  struct Line {
    std::string scheme, gap, err, dist, time;
  };
  std::vector<Line> lines;
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const auto& summary = summaries[i];
    if (summary.empty()) throw DomainError("compare_report: empty summary");
    std::map<std::string, std::vector<std::int64_t>> per_scheme;
    for (const auto& r : summary) per_scheme[r.scheme].push_back(r.k);
    for (auto& [scheme, k] : per_scheme) {
      std::sort(k.begin(), k.end());
      if (ks.empty()) ks = k;
      if (k != ks) throw DomainError("compare_report: mismatched checkpoints for '" + scheme + "'");
    }
    for (const auto& r : summary) {
      if (r.k != ks.back()) continue;
      const double secs = r.median_wall_ms / 1000.0;
      lines.push_back({r.scheme, format_sci2(r.median_gap_avg), format_sci2(r.median_err_ref),
                       format_sci2(r.median_dist_x_iter),
                       std::isnan(secs) ? "-" : format_sci2(secs) + "s"});
    }
  }
  Line head{"scheme", "gap", "err_ref", "dist_X", "time"};
  std::size_t w[5] = {head.scheme.size(), head.gap.size(), head.err.size(), head.dist.size(),
                      head.time.size()};
  for (const auto& l : lines) {
    w[0] = std::max(w[0], l.scheme.size());
    w[1] = std::max(w[1], l.gap.size());
    w[2] = std::max(w[2], l.err.size());
    w[3] = std::max(w[3], l.dist.size());
    w[4] = std::max(w[4], l.time.size());
  }
  std::ostringstream out;
  auto emit = [&](const Line& l) {
    auto pad = [](const std::string& s, std::size_t n) { return s + std::string(n - s.size(), ' '); };
    out << pad(l.scheme, w[0]) << " | " << pad(l.gap, w[1]) << " | " << pad(l.err, w[2]) << " | "
        << pad(l.dist, w[3]) << " | " << pad(l.time, w[4]) << "\n";
  };
  out << "K = " << ks.back() << "\n";
  emit(head);
  out << std::string(w[0] + w[1] + w[2] + w[3] + w[4] + 12, '-') << "\n";
  for (const auto& l : lines) emit(l);
  return out.str();
}

}  // namespace svi

#endif  // SVI_EXPERIMENT_REPORT_HPP_
