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

#include "ether/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>

#include "ether/error.h"

namespace ether::stats {

Summary summarize(std::span<const double> xs) {
  if (xs.empty()) throw InvalidArgument("summarize: empty sample");
  Summary s;
  s.n = xs.size();
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n >= 2) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

WelchResult welch_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw InvalidArgument("welch_test: each sample needs at least 2 values");
  const Summary sa = summarize(a);
  const Summary sb = summarize(b);
  const double na = static_cast<double>(sa.n);
  const double nb = static_cast<double>(sb.n);
  const double va = *sa.sd * *sa.sd / na;
  const double vb = *sb.sd * *sb.sd / nb;
  WelchResult r;
  if (va + vb == 0.0) {
    if (sa.mean != sb.mean)
      throw InvalidArgument("welch_test: both samples constant with different means");
    r.t = 0.0;
    r.df = na + nb - 2.0;
    r.p = 1.0;
    return r;
  }
  r.t = (sa.mean - sb.mean) / std::sqrt(va + vb);
  r.df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  r.p = student_t_two_sided_p(r.t, r.df);
  return r;
}

double cohens_d(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw InvalidArgument("cohens_d: each sample needs at least 2 values");
  const Summary sa = summarize(a);
  const Summary sb = summarize(b);
  const double na = static_cast<double>(sa.n);
  const double nb = static_cast<double>(sb.n);
  const double pooled =
      std::sqrt(((na - 1.0) * *sa.sd * *sa.sd + (nb - 1.0) * *sb.sd * *sb.sd) / (na + nb - 2.0));
  if (!(pooled > 0.0)) throw InvalidArgument("cohens_d: pooled standard deviation is zero");
  return (sa.mean - sb.mean) / pooled;
}

double percent_change(double baseline_mean, double variant_mean) {
  if (baseline_mean == 0.0) throw InvalidArgument("percent_change: zero baseline");
  return 100.0 * (variant_mean - baseline_mean) / baseline_mean;
}

namespace {

void check_labels(std::span<const std::string> a, std::span<const std::string> b,
                  const char* what) {
  if (a.size() != b.size())
    throw InvalidArgument(std::string(what) + ": label lists differ in length");
  if (a.empty()) throw InvalidArgument(std::string(what) + ": empty label lists");
}

std::size_t matches(std::span<const std::string> a, std::span<const std::string> b) {
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  return same;
}

}  // namespace

double percent_agreement(std::span<const std::string> a, std::span<const std::string> b) {
  check_labels(a, b, "percent_agreement");
  return 100.0 * static_cast<double>(matches(a, b)) / static_cast<double>(a.size());
}

double cohens_kappa(std::span<const std::string> a, std::span<const std::string> b) {
  check_labels(a, b, "cohens_kappa");
  // (p_o - p_e)/(1 - p_e) scaled by n^2 so both terms are integer counts.
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> marginals;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++marginals[a[i]].first;
    ++marginals[b[i]].second;
  }
  const std::uint64_t n = a.size();
  std::uint64_t chance = 0;
  for (const auto& [label, m] : marginals) chance += m.first * m.second;
  const std::uint64_t total = n * n;
  if (chance == total) return 1.0;  // single shared label: p_o is 1 as well
  const double num = static_cast<double>(n * matches(a, b)) - static_cast<double>(chance);
  return num / static_cast<double>(total - chance);
}

namespace {

double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) throw InvalidArgument("incomplete beta: a and b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw InvalidArgument("incomplete beta: x outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) throw InvalidArgument("student_t: degrees of freedom must be positive");
  if (std::isnan(t)) throw InvalidArgument("student_t: t is NaN");
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return std::clamp(regularized_incomplete_beta(0.5 * df, 0.5, x), 0.0, 1.0);
}

}  // namespace ether::stats
