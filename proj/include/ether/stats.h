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

// Summaries, Welch's t-test, Cohen's d, percent change and rater agreement.

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ether::stats {

struct Summary {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> sd;  // sample sd (n-1); absent for n < 2
};

Summary summarize(std::span<const double> xs);

struct WelchResult {
  double t = 0.0;
  double df = 0.0;
  double p = 1.0;  // two-sided
};

// Welch's unequal-variance t-test. Needs |a|,|b| >= 2. When both variances
// are zero the result is t = 0, p = 1 for equal means (df = n_a + n_b - 2)
// and an InvalidArgument otherwise.
WelchResult welch_test(std::span<const double> a, std::span<const double> b);

// (mean_a - mean_b) / pooled sd. Throws InvalidArgument when the pooled sd is 0.
double cohens_d(std::span<const double> a, std::span<const double> b);

// 100 * (variant - baseline) / baseline. Throws InvalidArgument for baseline 0.
double percent_change(double baseline_mean, double variant_mean);

double percent_agreement(std::span<const std::string> a, std::span<const std::string> b);

// (p_o - p_e) / (1 - p_e) with p_e from the marginal label frequencies; 1
// when p_o = p_e = 1.
double cohens_kappa(std::span<const std::string> a, std::span<const std::string> b);

// I_x(a, b) by Lentz's continued fraction, about 1e-14 relative accuracy.
double regularized_incomplete_beta(double a, double b, double x);

// P(|T| >= |t|) for Student's t with `df` > 0 degrees of freedom.
double student_t_two_sided_p(double t, double df);

}  // namespace ether::stats
