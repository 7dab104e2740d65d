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

#include "ether/incongruence.h"

#include <algorithm>
#include <cmath>

#include "ether/embeddings.h"
#include "ether/error.h"
#include "ether/io.h"
#include "json.hpp"

namespace ether::incongruence {

using nlohmann::json;

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Continuous: return "continuous";
    case Scheme::Binary: return "binary";
    case Scheme::Engagement: return "engagement";
  }
  return "";
}

Scheme parse_scheme(std::string_view name) {
  if (name == "continuous") return Scheme::Continuous;
  if (name == "binary") return Scheme::Binary;
  if (name == "engagement") return Scheme::Engagement;
  throw ConfigError("unknown weighting scheme '" + std::string(name) +
                    "' (expected continuous, binary or engagement)");
}

std::string to_string(const TauMode& tau) {
  if (tau.kind == TauMode::Kind::BatchMedian) return "median";
  return "fixed:" + io::format_number(tau.value);
}

TauMode parse_tau(std::string_view spec) {
  if (spec == "median") return TauMode::batch_median();
  constexpr std::string_view prefix = "fixed:";
  if (spec.substr(0, prefix.size()) == prefix) {
    const std::string num(spec.substr(prefix.size()));
    char* end = nullptr;
    const double v = std::strtod(num.c_str(), &end);
    if (!num.empty() && end == num.c_str() + num.size() && v > 0.0 && std::isfinite(v))
      return TauMode::fixed(v);
    throw ConfigError("fixed tau must be a positive number, got '" + num + "'");
  }
  throw ConfigError("tau must be 'median' or 'fixed:<x>', got '" + std::string(spec) + "'");
}

void WeightConfig::validate() const {
  if (!(gamma >= kGammaMin && gamma <= kGammaMax))
    throw ConfigError("gamma must lie in [0.8,1.2], got " + io::format_number(gamma));
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ConfigError("lambda must be non-negative, got " + io::format_number(lambda));
  if (tau.kind == TauMode::Kind::Fixed && !(tau.value > 0.0))
    throw ConfigError("fixed tau must be positive, got " + io::format_number(tau.value));
  if (!(dropout_p >= 0.0 && dropout_p <= 1.0))
    throw ConfigError("dropout_p must lie in [0,1], got " + io::format_number(dropout_p));
}

double vad_mismatch(const Vad& visual, const Vad& textual) {
  double s = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    const double d = visual[k] - textual[k];
    s += d * d;
  }
  return std::sqrt(s);
}

double batch_tau(std::span<const double> mismatches) {
  if (mismatches.empty()) throw InvalidArgument("batch_tau: empty batch");
  std::vector<double> sorted(mismatches.begin(), mismatches.end());
  const std::size_t mid = (sorted.size() - 1) / 2;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(mid),
                   sorted.end());
  return std::max(sorted[mid], kTauFloor);
}

double incongruence_score(double mismatch, double tau, double cos_vt, double lambda) {
  if (!(tau > 0.0)) throw InvalidArgument("incongruence_score: tau must be positive");
  if (!(mismatch >= 0.0)) throw InvalidArgument("incongruence_score: negative mismatch");
  if (!(lambda >= 0.0)) throw InvalidArgument("incongruence_score: negative lambda");
  if (!(cos_vt >= -1.0 && cos_vt <= 1.0))
    throw InvalidArgument("incongruence_score: cosine outside [-1,1]");
  // (1 - cos) may reach 2 for anti-aligned embeddings; only the outer clip
  // bounds the sum.
  const double raw = mismatch / tau + lambda * (1.0 - cos_vt);
  return std::clamp(raw, 0.0, 1.0);
}

double sample_weight(double s, double gamma) {
  if (!(s >= 0.0 && s <= 1.0))
    throw InvalidArgument("sample_weight: score outside [0,1]: " + io::format_number(s));
  if (!(gamma >= kGammaMin && gamma <= kGammaMax))
    throw InvalidArgument("sample_weight: gamma outside [0.8,1.2]: " + io::format_number(gamma));
  if (s == 0.0) return 1.0;
  return 1.0 + std::pow(s, gamma);
}

double binary_weight(int flag) {
  if (flag != 0 && flag != 1)
    throw InvalidArgument("binary_weight: indicator must be 0 or 1, got " + std::to_string(flag));
  return 1.0 + flag;
}

double engagement_weight(double engagement, bool invert) {
  if (!(engagement >= 0.0 && engagement <= 1.0))
    throw InvalidArgument("engagement_weight: engagement outside [0,1]: " +
                          io::format_number(engagement));
  return 1.0 + (invert ? 1.0 - engagement : engagement);
}

std::vector<double> normalize_batch(std::span<const double> weights) {
  if (weights.empty()) throw InvalidArgument("normalize_batch: empty batch");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw InvalidArgument("normalize_batch: non-positive weight");
    sum += w;
  }
  const double mean = sum / static_cast<double>(weights.size());
  std::vector<double> out(weights.begin(), weights.end());
  for (auto& w : out) w /= mean;
  return out;
}

double weighted_objective(std::span<const double> weights, std::span<const double> losses) {
  if (weights.size() != losses.size())
    throw InvalidArgument("weighted_objective: " + std::to_string(weights.size()) +
                          " weights vs " + std::to_string(losses.size()) + " losses");
  if (weights.empty()) throw InvalidArgument("weighted_objective: empty batch");
  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) sum += weights[i] * losses[i];
  return sum / static_cast<double>(weights.size());
}

std::vector<std::string> check_signals(const SampleSignals& s) {
  std::vector<std::string> out;
  auto check_vad = [&](const std::optional<Vad>& v, const char* name) {
    if (!v) {
      out.push_back(std::string(name) + ": missing");
      return;
    }
    for (double x : *v)
      if (!(x >= 0.0 && x <= 1.0)) {
        out.push_back(std::string(name) + ": component outside [0,1]");
        break;
      }
  };
  check_vad(s.vad_visual, "vad_visual");
  check_vad(s.vad_textual, "vad_textual");
  if (s.z_visual.empty() || s.z_textual.empty()) {
    out.push_back("z_visual/z_textual: missing");
    return out;
  }
  if (s.z_visual.size() != s.z_textual.size())
    out.push_back("z_visual/z_textual: dimension mismatch");
  if (std::abs(embeddings::norm(s.z_visual) - 1.0) > kUnitNormTolerance)
    out.push_back("z_visual: not unit norm");
  if (std::abs(embeddings::norm(s.z_textual) - 1.0) > kUnitNormTolerance)
    out.push_back("z_textual: not unit norm");
  return out;
}

namespace {

std::string sample_label(const SampleSignals& s, std::size_t index) {
  return s.pair_id.empty() ? "sample " + std::to_string(index) : "'" + s.pair_id + "'";
}

}  // namespace

WeightedBatch weigh_batch(std::span<const SampleSignals> batch, const WeightConfig& config) {
  if (batch.empty()) throw InvalidArgument("weigh_batch: empty batch");
  WeightedBatch out;
  out.weights.reserve(batch.size());
  out.scores.reserve(batch.size());

  switch (config.scheme) {
    case Scheme::Continuous: {
      std::vector<double> mismatch(batch.size());
      for (std::size_t i = 0; i < batch.size(); ++i) {
        auto problems = check_signals(batch[i]);
        if (!problems.empty())
          throw InvalidArgument("continuous scheme: " + sample_label(batch[i], i) + ": " +
                                problems.front());
        mismatch[i] = vad_mismatch(*batch[i].vad_visual, *batch[i].vad_textual);
      }
      const double tau = config.tau.kind == TauMode::Kind::BatchMedian ? batch_tau(mismatch)
                                                                        : config.tau.value;
      for (std::size_t i = 0; i < batch.size(); ++i) {
        const double c = embeddings::cosine(batch[i].z_visual, batch[i].z_textual);
        const double s = incongruence_score(mismatch[i], tau, c, config.lambda);
        out.scores.push_back(s);
        out.weights.push_back(sample_weight(s, config.gamma));
      }
      break;
    }
    case Scheme::Binary:
      for (std::size_t i = 0; i < batch.size(); ++i) {
        if (!batch[i].incongruence_flag)
          throw InvalidArgument("binary scheme: " + sample_label(batch[i], i) +
                                " has no incongruence_flag");
        const int flag = *batch[i].incongruence_flag;
        out.weights.push_back(binary_weight(flag));
        out.scores.push_back(static_cast<double>(flag));
      }
      break;
    case Scheme::Engagement:
      for (std::size_t i = 0; i < batch.size(); ++i) {
        if (!batch[i].engagement)
          throw InvalidArgument("engagement scheme: " + sample_label(batch[i], i) +
                                " has no engagement");
        const double e = *batch[i].engagement;
        out.weights.push_back(engagement_weight(e, config.invert_engagement));
        out.scores.push_back(config.invert_engagement ? 1.0 - e : e);
      }
      break;
  }

  if (config.normalize) out.weights = normalize_batch(out.weights);
  return out;
}

namespace {

Vad read_vad(const json& j, const char* key, std::size_t line) {
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 3) throw ParseError(std::string(key) + " must have 3 numbers", line);
  Vad out{};
  for (std::size_t k = 0; k < 3; ++k) {
    if (!v[k].is_number()) throw ParseError(std::string(key) + " must have 3 numbers", line);
    out[k] = v[k].get<double>();
  }
  return out;
}

std::vector<double> read_vector(const json& v, const char* key, std::size_t line) {
  if (!v.is_array()) throw ParseError(std::string(key) + " must be an array", line);
  std::vector<double> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw ParseError(std::string(key) + " must contain numbers", line);
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

std::vector<SampleSignals> parse_signals(std::string_view jsonl) {
  std::vector<SampleSignals> out;
  io::for_each_line(jsonl, [&](std::string_view line, std::size_t line_no) {
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    if (!j.is_object() || !j.contains("pair_id") || !j["pair_id"].is_string())
      throw ParseError("signals record needs a string pair_id", line_no);
    SampleSignals s;
    s.pair_id = j["pair_id"].get<std::string>();
    if (j.contains("vad_visual")) s.vad_visual = read_vad(j, "vad_visual", line_no);
    if (j.contains("vad_textual")) s.vad_textual = read_vad(j, "vad_textual", line_no);
    if (j.contains("z_visual")) s.z_visual = read_vector(j["z_visual"], "z_visual", line_no);
    if (j.contains("z_textual")) s.z_textual = read_vector(j["z_textual"], "z_textual", line_no);
    if (auto it = j.find("incongruence_flag"); it != j.end() && !it->is_null()) {
      if (!it->is_number_integer()) throw ParseError("incongruence_flag must be 0 or 1", line_no);
      s.incongruence_flag = it->get<int>();
    }
    if (auto it = j.find("engagement"); it != j.end() && !it->is_null()) {
      if (!it->is_number()) throw ParseError("engagement must be a number", line_no);
      s.engagement = it->get<double>();
    }
    out.push_back(std::move(s));
  });
  return out;
}

std::vector<SampleSignals> load_signals(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  try {
    return parse_signals(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

std::string weights_jsonl(std::span<const SampleSignals> signals, const WeightConfig& config,
                          std::size_t batch_size) {
  if (batch_size == 0) throw InvalidArgument("batch_size must be positive");
  std::string out;
  for (std::size_t start = 0; start < signals.size(); start += batch_size) {
    const auto batch = signals.subspan(start, std::min(batch_size, signals.size() - start));
    const auto weighted = weigh_batch(batch, config);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      nlohmann::ordered_json j;
      j["pair_id"] = batch[i].pair_id;
      j["s"] = weighted.scores[i];
      j["w"] = weighted.weights[i];
      out += j.dump() + "\n";
    }
  }
  return out;
}

}  // namespace ether::incongruence
