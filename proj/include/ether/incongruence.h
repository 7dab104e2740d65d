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

// Continuous verbal-visual incongruence score, the bounded loss-weight law
// w = 1 + s^gamma, its binary and engagement variants, batch normalization
// and the weighted objective.

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ether::incongruence {

using Vad = std::array<double, 3>;

// Externally produced per-sample signals. Which fields are required depends
// on the weighting scheme; see weigh_batch().
struct SampleSignals {
  std::string pair_id;
  std::optional<Vad> vad_visual;
  std::optional<Vad> vad_textual;
  std::vector<double> z_visual;   // unit norm
  std::vector<double> z_textual;  // unit norm, same dimension as z_visual
  std::optional<int> incongruence_flag;
  std::optional<double> engagement;
};

enum class Scheme { Continuous, Binary, Engagement };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);  // throws ConfigError

struct TauMode {
  enum class Kind { BatchMedian, Fixed };
  Kind kind = Kind::BatchMedian;
  double value = 0.0;  // only meaningful for Fixed

  static TauMode batch_median() { return {}; }
  static TauMode fixed(double tau) { return {Kind::Fixed, tau}; }
};

// "median" or "fixed:<x>"
std::string to_string(const TauMode& tau);
TauMode parse_tau(std::string_view spec);  // throws ConfigError

struct WeightConfig {
  Scheme scheme = Scheme::Continuous;
  TauMode tau;
  double lambda = 0.5;
  double gamma = 1.0;
  bool normalize = false;
  double dropout_p = 0.3;
  // Engagement scheme only: w = 1 + (1 - E) instead of w = 1 + E.
  bool invert_engagement = false;

  // Throws ConfigError when a knob is out of its documented range.
  void validate() const;
};

struct WeightedBatch {
  std::vector<double> weights;
  std::vector<double> scores;
  std::optional<std::vector<double>> losses;
};

inline constexpr double kTauFloor = 1e-6;
inline constexpr double kGammaMin = 0.8;
inline constexpr double kGammaMax = 1.2;
inline constexpr double kUnitNormTolerance = 1e-6;

// Euclidean distance between the visual and textual VAD predictions.
double vad_mismatch(const Vad& visual, const Vad& textual);

// Median of the batch mismatches (lower-middle element for even sizes),
// floored at kTauFloor.
double batch_tau(std::span<const double> mismatches);

// clip(mismatch / tau + lambda * (1 - cos_vt), 0, 1)
double incongruence_score(double mismatch, double tau, double cos_vt, double lambda);

// 1 + s^gamma with 0^gamma = 0; always in [1,2].
double sample_weight(double s, double gamma);
double binary_weight(int flag);
double engagement_weight(double engagement, bool invert = false);

// Divides every weight by the batch mean.
std::vector<double> normalize_batch(std::span<const double> weights);

// (1/|B|) * sum_i w_i * loss_i
double weighted_objective(std::span<const double> weights, std::span<const double> losses);

// Range/shape problems with one sample's continuous signals; empty if fine.
std::vector<std::string> check_signals(const SampleSignals& s);

// Scores and weights one batch. Continuous: s from the VAD mismatch and the
// embedding cosine with tau per config, then w = 1 + s^gamma. Binary: s = I.
// Engagement: w = 1 + E (or 1 + (1 - E) inverted) and s records the value
// used. Normalization is applied iff config.normalize.
WeightedBatch weigh_batch(std::span<const SampleSignals> batch, const WeightConfig& config);

// Signals JSONL: {pair_id, vad_visual:[3], vad_textual:[3], z_visual:[d],
// z_textual:[d], incongruence_flag?, engagement?}
std::vector<SampleSignals> parse_signals(std::string_view jsonl);
std::vector<SampleSignals> load_signals(const std::filesystem::path& path);

// Weighs `signals` in consecutive batches of `batch_size` (last may be
// short) and renders `{pair_id, s, w}` lines.
std::string weights_jsonl(std::span<const SampleSignals> signals, const WeightConfig& config,
                          std::size_t batch_size);

}  // namespace ether::incongruence
