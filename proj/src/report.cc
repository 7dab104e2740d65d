// Copyright 2026 The Ether Toolkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ether/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "ether/error.h"
#include "ether/io.h"

namespace ether::stats {

namespace {

ComparisonRow compare_one(const std::string& system, const std::string& metric,
                          const std::vector<double>& base, const std::vector<double>& variant) {
  ComparisonRow row;
  row.system = system;
  row.metric = metric;
  row.baseline = summarize(base);
  row.variant = summarize(variant);
  try {
    const auto w = welch_test(variant, base);
    row.t = w.t;
    row.df = w.df;
    row.p = w.p;
  } catch (const InvalidArgument&) {
    if (base.size() < 2 || variant.size() < 2) throw;
    // Both constant with different means: the separation is exact.
    row.t = row.variant.mean > row.baseline.mean ? INFINITY : -INFINITY;
    row.df = static_cast<double>(base.size() + variant.size()) - 2.0;
    row.p = 0.0;
  }
  try {
    row.d = cohens_d(variant, base);
  } catch (const InvalidArgument&) {
    if (row.variant.mean == row.baseline.mean) row.d = 0.0;
  }
  if (row.baseline.mean != 0.0) row.change_pct = percent_change(row.baseline.mean, row.variant.mean);
  return row;
}

const std::vector<double>& metric_of(const ScoresBySystem& scores, const std::string& system,
                                     const std::string& metric) {
  const auto& by_metric = scores.at(system);
  auto it = by_metric.find(metric);
  if (it == by_metric.end())
    throw AlignmentError("system '" + system + "' has no scores for metric '" + metric + "'");
  return it->second;
}

std::string g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string opt_g17(const std::optional<double>& x) { return x ? g17(*x) : ""; }

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out(1);
  for (char c : line) {
    if (c == ',')
      out.emplace_back();
    else if (c != '\r')
      out.back().push_back(c);
  }
  return out;
}

double parse_double(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw ParseError("bad number '" + s + "'", line);
  return v;
}

std::optional<double> parse_opt(const std::string& s, std::size_t line) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, line);
}

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width > s.size() ? width - s.size() : 0, ' ');
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (widths.size() <= c) widths.push_back(0);
      widths[c] = std::max(widths[c], r[c].size());
    }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c)
      line += c + 1 < r.size() ? pad(r[c], widths[c] + 2) : r[c];
    out += line + "\n";
  }
  return out;
}

std::string mean_sd(const Summary& s) {
  std::string out = display_score(s.mean);
  out += " +- ";
  out += s.sd ? display_score(*s.sd) : "n/a";
  return out;
}

}  // namespace

ComparisonTable comparison_report(const ScoresBySystem& scores, const std::string& baseline,
                                  const std::vector<std::string>& metrics) {
  if (!scores.count(baseline)) throw AlignmentError("unknown baseline system '" + baseline + "'");
  std::vector<std::string> names = metrics;
  if (names.empty())
    for (const auto& [m, xs] : scores.at(baseline)) names.push_back(m);

  std::vector<std::string> systems;
  for (const auto& [name, by_metric] : scores)
    if (name != baseline) systems.push_back(name);
  if (systems.empty()) systems.push_back(baseline);

  ComparisonTable table{baseline, {}};
  for (const auto& system : systems)
    for (const auto& metric : names) {
      const auto& base = metric_of(scores, baseline, metric);
      const auto& variant = metric_of(scores, system, metric);
      if (base.size() != variant.size())
        throw AlignmentError("metric '" + metric + "': " + system + " has " +
                             std::to_string(variant.size()) + " values, baseline has " +
                             std::to_string(base.size()));
      table.rows.push_back(compare_one(system, metric, base, variant));
    }
  return table;
}

std::string display_score(double unit_value) { return io::format_fixed(100.0 * unit_value, 1); }
std::string display_p(double p) {
  if (p < 0.001) return "<0.001";
  return io::format_fixed(p, 3);
}
std::string display_d(double d) { return io::format_fixed(d, 2); }
std::string display_change(double pct) { return io::format_fixed(pct, 1); }

std::string comparison_text(const ComparisonTable& table) {
  std::string out;
  std::string current;
  std::vector<std::vector<std::string>> rows;
  auto flush = [&] {
    if (rows.size() > 1) out += render_table(rows);
    rows.clear();
  };
  for (const auto& r : table.rows) {
    if (r.system != current) {
      flush();
      if (!out.empty()) out += "\n";
      out += r.system + " vs " + table.baseline + "\n";
      rows.push_back({"Metric", table.baseline, r.system, "p-value", "Cohen's d", "Change (%)"});
      current = r.system;
    }
    rows.push_back({r.metric, mean_sd(r.baseline), mean_sd(r.variant), display_p(r.p),
                    r.d ? display_d(*r.d) : "n/a",
                    r.change_pct ? display_change(*r.change_pct) : "n/a"});
  }
  flush();
  return out;
}

std::string comparison_csv(const ComparisonTable& table) {
  std::string out =
      "baseline,system,metric,n_a,mean_a,sd_a,n_b,mean_b,sd_b,t,df,p,d,change_pct\n";
  for (const auto& r : table.rows) {
    out += table.baseline + "," + r.system + "," + r.metric + "," +
           std::to_string(r.baseline.n) + "," + g17(r.baseline.mean) + "," +
           opt_g17(r.baseline.sd) + "," + std::to_string(r.variant.n) + "," +
           g17(r.variant.mean) + "," + opt_g17(r.variant.sd) + "," + g17(r.t) + "," +
           g17(r.df) + "," + g17(r.p) + "," + opt_g17(r.d) + "," + opt_g17(r.change_pct) + "\n";
  }
  return out;
}

ComparisonTable parse_comparison_csv(std::string_view csv) {
  ComparisonTable table;
  bool header = true;
  io::for_each_line(csv, [&](std::string_view line, std::size_t line_no) {
    if (header) {
      header = false;
      return;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 14) throw ParseError("expected 14 comparison columns", line_no);
    table.baseline = f[0];
    ComparisonRow r;
    r.system = f[1];
    r.metric = f[2];
    r.baseline.n = static_cast<std::size_t>(std::stoull(f[3]));
    r.baseline.mean = parse_double(f[4], line_no);
    r.baseline.sd = parse_opt(f[5], line_no);
    r.variant.n = static_cast<std::size_t>(std::stoull(f[6]));
    r.variant.mean = parse_double(f[7], line_no);
    r.variant.sd = parse_opt(f[8], line_no);
    r.t = parse_double(f[9], line_no);
    r.df = parse_double(f[10], line_no);
    r.p = parse_double(f[11], line_no);
    r.d = parse_opt(f[12], line_no);
    r.change_pct = parse_opt(f[13], line_no);
    table.rows.push_back(std::move(r));
  });
  return table;
}

std::vector<AgreementRow> agreement_report(const corpus::Corpus& rater,
                                           const corpus::Corpus& reference) {
  using corpus::IncongruenceKind;
  if (rater.pairs.size() != reference.pairs.size())
    throw AlignmentError("agreement: corpora differ in size (" +
                         std::to_string(rater.pairs.size()) + " vs " +
                         std::to_string(reference.pairs.size()) + ")");
  std::vector<std::string> overall_a, overall_b, detect_a, detect_b, type_a, type_b;
  for (const auto& p : rater.pairs) {
    const auto* q = reference.find(p.pair_id);
    if (!q) throw AlignmentError("agreement: pair '" + p.pair_id + "' missing from reference");
    const auto ka = p.annotations.incongruence;
    const auto kb = q->annotations.incongruence;
    auto overall = [](const corpus::DialoguePair& x) {
      return std::string(corpus::to_string(x.annotations.incongruence)) + "/" +
             std::string(corpus::to_string(corpus::engagement_band(x.annotations.engagement)));
    };
    overall_a.push_back(overall(p));
    overall_b.push_back(overall(*q));
    detect_a.push_back(ka == IncongruenceKind::None ? "congruent" : "incongruent");
    detect_b.push_back(kb == IncongruenceKind::None ? "congruent" : "incongruent");
    if (ka != IncongruenceKind::None && kb != IncongruenceKind::None) {
      type_a.emplace_back(corpus::to_string(ka));
      type_b.emplace_back(corpus::to_string(kb));
    }
  }
  auto row = [](std::string name, const std::vector<std::string>& a,
                const std::vector<std::string>& b) {
    AgreementRow r{std::move(name), a.size(), 0.0, std::nullopt};
    if (!a.empty()) {
      r.agreement_pct = percent_agreement(a, b);
      r.kappa = cohens_kappa(a, b);
    }
    return r;
  };
  return {row("Overall", overall_a, overall_b), row("Incong. Detection", detect_a, detect_b),
          row("Incong. Type", type_a, type_b)};
}

std::string agreement_text(const std::vector<AgreementRow>& rows) {
  std::vector<std::vector<std::string>> cells{{"Measure", "n", "Agree. (%)", "Cohen's k"}};
  for (const auto& r : rows)
    cells.push_back({r.measure, std::to_string(r.n), io::format_fixed(r.agreement_pct, 1),
                     r.kappa ? io::format_fixed(*r.kappa, 2) : "n/a"});
  return render_table(cells);
}

std::string agreement_csv(const std::vector<AgreementRow>& rows) {
  std::string out = "measure,n,agreement_pct,kappa\n";
  for (const auto& r : rows)
    out += r.measure + "," + std::to_string(r.n) + "," + g17(r.agreement_pct) + "," +
           opt_g17(r.kappa) + "\n";
  return out;
}

}  // namespace ether::stats
