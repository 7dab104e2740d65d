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

#pragma once

// Comparison and agreement tables in the layout of the published result
// tables: per metric, both systems' mean +- sd on the 0-100 display scale,
// Welch p-value, Cohen's d and percent change against the baseline.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ether/corpus.h"
#include "ether/stats.h"

namespace ether::stats {

// system -> metric -> per-pair values (aligned across systems).
using ScoresBySystem = std::map<std::string, std::map<std::string, std::vector<double>>>;

struct ComparisonRow {
  std::string system;  // compared against the baseline
  std::string metric;
  Summary baseline;
  Summary variant;
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;
  std::optional<double> d;           // absent when the pooled sd is 0 and means differ
  std::optional<double> change_pct;  // absent when the baseline mean is 0
};

struct ComparisonTable {
  std::string baseline;
  std::vector<ComparisonRow> rows;
};

// Compares every non-baseline system with the baseline on each metric, in
// the order given by `metrics` (all baseline metrics when empty). With only
// the baseline present it is compared against itself. Throws AlignmentError
// for unknown baselines, missing metrics or vectors of different lengths.
ComparisonTable comparison_report(const ScoresBySystem& scores, const std::string& baseline,
                                  const std::vector<std::string>& metrics = {});

// Display rounding: means/sd on the 0-100 scale to 1 decimal, p to 3
// decimals, d to 2 decimals, change to 1 decimal.
std::string display_score(double unit_value);
std::string display_p(double p);
std::string display_d(double d);
std::string display_change(double pct);

// Aligned plain-text table: Metric, baseline, variant, p-value, Cohen's d, Change (%).
std::string comparison_text(const ComparisonTable& table);
// Full-precision CSV that parse_comparison_csv() reads back exactly.
std::string comparison_csv(const ComparisonTable& table);
ComparisonTable parse_comparison_csv(std::string_view csv);

struct AgreementRow {
  std::string measure;
  std::size_t n = 0;
  double agreement_pct = 0.0;
  std::optional<double> kappa;  // absent when n = 0
};

// Agreement between two annotations of the same pairs (matched by pair_id):
//   Overall           - incongruence kind and engagement band both agree
//   Incong. Detection - congruent vs incongruent
//   Incong. Type      - minimizing vs contradiction, pairs both mark incongruent
// Throws AlignmentError when the pair ids differ.
std::vector<AgreementRow> agreement_report(const corpus::Corpus& rater,
                                           const corpus::Corpus& reference);
std::string agreement_text(const std::vector<AgreementRow>& rows);
std::string agreement_csv(const std::vector<AgreementRow>& rows);

}  // namespace ether::stats
