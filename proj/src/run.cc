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

#include "ether/run.h"

#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "ether/corpus.h"
#include "ether/embeddings.h"
#include "ether/error.h"
#include "ether/io.h"
#include "ether/lexicons.h"
#include "ether/masking.h"
#include "ether/metrics.h"
#include "ether/report.h"
#include "json.hpp"

#ifndef ETHER_VERSION
#define ETHER_VERSION "0.0.0"
#endif

namespace ether::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::pair<Command, std::string_view> kCommands[] = {
    {Command::Validate, "validate"}, {Command::Stats, "stats"},     {Command::Weights, "weights"},
    {Command::Plan, "plan"},         {Command::Mask, "mask"},       {Command::Score, "score"},
    {Command::Compare, "compare"},   {Command::Agreement, "agreement"},
};

}  // namespace

std::string_view to_string(Command command) {
  for (const auto& [c, name] : kCommands)
    if (c == command) return name;
  return "";
}

std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [c, n] : kCommands)
    if (n == name) return c;
  return std::nullopt;
}

std::string_view toolkit_version() { return ETHER_VERSION; }

std::pair<std::string, fs::path> parse_named_path(std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == spec.size())
    throw ConfigError("expected name=path, got '" + std::string(spec) + "'");
  return {std::string(spec.substr(0, eq)), fs::path(std::string(spec.substr(eq + 1)))};
}

void apply_config_json(RunConfig& config, std::string_view json_text, const std::string& origin) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": malformed JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError(origin + ": expected a JSON object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      const json& v = it.value();
      if (key == "corpus") config.corpus = v.get<std::string>();
      else if (key == "signals") config.signals = v.get<std::string>();
      else if (key == "vectors") config.vectors = v.get<std::string>();
      else if (key == "lexicons") config.lexicons = v.get<std::string>();
      else if (key == "reference") config.reference = v.get<std::string>();
      else if (key == "out") config.output_dir = v.get<std::string>();
      else if (key == "baseline") config.baseline = v.get<std::string>();
      else if (key == "responses") {
        config.responses.clear();
        if (v.is_object()) {
          for (auto r = v.begin(); r != v.end(); ++r)
            config.responses.emplace_back(r.key(), r.value().get<std::string>());
        } else {
          for (const auto& spec : v) config.responses.push_back(parse_named_path(spec.get<std::string>()));
        }
      }
      else if (key == "scheme") config.weights.scheme = incongruence::parse_scheme(v.get<std::string>());
      else if (key == "gamma") config.weights.gamma = v.get<double>();
      else if (key == "lambda") config.weights.lambda = v.get<double>();
      else if (key == "tau") config.weights.tau = incongruence::parse_tau(v.get<std::string>());
      else if (key == "normalize") config.weights.normalize = v.get<bool>();
      else if (key == "invert_engagement") config.weights.invert_engagement = v.get<bool>();
      else if (key == "dropout_p") config.weights.dropout_p = v.get<double>();
      else if (key == "seed") config.seed = v.get<std::uint64_t>();
      else if (key == "batch_size") config.batch_size = v.get<std::size_t>();
      else if (key == "strict") config.strict = v.get<bool>();
      else throw ConfigError(origin + ": unknown key '" + key + "'");
    }
  } catch (const json::type_error& e) {
    throw ConfigError(origin + ": " + e.what());
  }
}

std::string canonical_config(Command command, const RunConfig& c) {
  ordered_json j;
  j["command"] = std::string(to_string(command));
  j["corpus"] = c.corpus.generic_string();
  j["signals"] = c.signals.generic_string();
  ordered_json responses = ordered_json::array();
  for (const auto& [name, path] : c.responses) responses.push_back(name + "=" + path.generic_string());
  j["responses"] = responses;
  j["vectors"] = c.vectors.generic_string();
  j["lexicons"] = c.lexicons.generic_string();
  j["reference"] = c.reference.generic_string();
  j["scheme"] = std::string(incongruence::to_string(c.weights.scheme));
  j["gamma"] = c.weights.gamma;
  j["lambda"] = c.weights.lambda;
  j["tau"] = incongruence::to_string(c.weights.tau);
  j["normalize"] = c.weights.normalize;
  j["invert_engagement"] = c.weights.invert_engagement;
  j["dropout_p"] = c.weights.dropout_p;
  if (c.seed)
    j["seed"] = *c.seed;
  else
    j["seed"] = nullptr;
  j["batch_size"] = c.batch_size;
  j["strict"] = c.strict;
  j["baseline"] = c.baseline;
  return j.dump();
}

namespace {

class Runner {
 public:
  Runner(Command command, const RunConfig& config, std::ostream& out, std::ostream& err)
      : command_(command), config_(config), out_(out), err_(err) {}

  int exec() {
    config_.weights.validate();
    if (config_.batch_size == 0) throw ConfigError("batch_size must be positive");
    int code = kOk;
    switch (command_) {
      case Command::Validate: code = validate(); break;
      case Command::Stats: stats(); break;
      case Command::Weights: weights(); break;
      case Command::Plan: plan(); break;
      case Command::Mask: mask(); break;
      case Command::Score: score(); break;
      case Command::Compare: compare(); break;
      case Command::Agreement: agreement(); break;
    }
    write_manifest(code);
    return code;
  }

 private:
  void emit(const std::string& name, std::string_view content) {
    io::write_file(config_.output_dir / name, content);
    artifacts_.push_back(name);
  }

  void require(const fs::path& p, const char* flag) {
    if (p.empty())
      throw ConfigError(std::string(to_string(command_)) + " requires " + flag);
  }

  corpus::Corpus load_corpus(const fs::path& path) {
    require(path, "--corpus");
    corpus::LoadOptions opts;
    opts.strict = config_.strict;
    auto result = corpus::load_corpus(path, opts);
    if (!result.dropped.empty()) {
      err_ << "dropped " << result.dropped.size() << " violation(s) from " << path.string() << "\n"
           << corpus::format_report(result.dropped);
      emit("dropped.txt", corpus::format_report(result.dropped));
    }
    return std::move(result.corpus);
  }

  lexicons::Lexicons load_lexicons() {
    fs::path path = config_.lexicons;
    if (path.empty())
      if (const char* env = std::getenv("ETHER_LEXICONS"); env && *env) path = env;
    if (path.empty()) return {};
    lexicon_source_ = path.generic_string();
    return lexicons::load_lexicons(path);
  }

  std::optional<embeddings::VectorStore> load_vectors() {
    if (config_.vectors.empty()) return std::nullopt;
    return embeddings::load_vectors(config_.vectors);
  }

  int validate() {
    require(config_.corpus, "--corpus");
    const auto report = corpus::check_corpus_text(io::read_file(config_.corpus));
    emit("violations.txt", corpus::format_report(report));
    out_ << report.size() << " violation(s) in " << config_.corpus.string() << "\n";
    return report.empty() ? kOk : kValidationFailure;
  }

  void stats() {
    const auto c = load_corpus(config_.corpus);
    const auto s = corpus::stats_json(corpus::corpus_stats(c));
    emit("stats.json", s);
    out_ << s;
  }

  void weights() {
    require(config_.signals, "--signals");
    const auto signals = incongruence::load_signals(config_.signals);
    emit("weights.jsonl", incongruence::weights_jsonl(signals, config_.weights, config_.batch_size));
    out_ << "weighted " << signals.size() << " sample(s)\n";
  }

  void plan() {
    if (!config_.seed) throw ConfigError("plan requires --seed");
    require(config_.signals, "--signals");
    const auto c = load_corpus(config_.corpus);
    const auto signals = masking::index_signals(incongruence::load_signals(config_.signals));
    const auto lex = load_lexicons();
    const auto p = masking::plan_epoch(c, signals, config_.weights, lex.mask, *config_.seed,
                                       config_.batch_size);
    emit("plan.jsonl", masking::plan_jsonl(p));
    std::size_t masked = 0;
    for (const auto& e : p.entries) masked += e.masked;
    out_ << "planned " << p.entries.size() << " sample(s), " << masked << " masked\n";
  }

  void mask() {
    const auto c = load_corpus(config_.corpus);
    const auto lex = load_lexicons();
    std::string preview = "pair_id\tn_masked\tmasked_text\n";
    for (const auto& p : c.pairs) {
      const auto m = masking::mask_context(p.client.text, lex.mask);
      std::string flat = m.text;
      for (auto& ch : flat)
        if (ch == '\t' || ch == '\n' || ch == '\r') ch = ' ';
      preview += p.pair_id + "\t" + std::to_string(m.n_masked) + "\t" + flat + "\n";
    }
    emit("mask_preview.tsv", preview);
    out_ << preview;
  }

  stats::ScoresBySystem score_systems(const corpus::Corpus& c) {
    if (config_.responses.empty()) throw ConfigError("at least one --responses name=path is required");
    const auto lex = load_lexicons();
    const auto store = load_vectors();
    const embeddings::VectorStore* store_ptr = store ? &*store : nullptr;
    stats::ScoresBySystem all;
    std::optional<std::vector<std::string>> ids;
    for (const auto& [name, path] : config_.responses) {
      if (all.count(name)) throw ConfigError("duplicate system name '" + name + "'");
      const auto scores =
          metrics::score_corpus(metrics::load_responses(path), c, lex.markers, store_ptr);
      emit("scores_" + name + ".csv", metrics::scores_csv(scores));
      emit("summary_" + name + ".json", metrics::scores_summary_json(scores));
      if (!scores.missing.empty())
        err_ << name << ": " << scores.missing.size() << " pair(s) without a response\n";
      out_ << name << ": scored " << scores.pair_ids.size() << " pair(s)\n";
      if (command_ == Command::Compare && ids && *ids != scores.pair_ids)
        throw AlignmentError("system '" + name + "' covers different pairs than '" +
                             config_.responses.front().first + "'");
      ids = scores.pair_ids;
      all[name] = scores.columns;
      with_vectors_ = scores.with_vectors;
    }
    return all;
  }

  void score() { score_systems(load_corpus(config_.corpus)); }

  void compare() {
    const auto all = score_systems(load_corpus(config_.corpus));
    const std::string baseline =
        config_.baseline.empty() ? config_.responses.front().first : config_.baseline;
    const auto table =
        stats::comparison_report(all, baseline, metrics::headline_metrics(with_vectors_));
    emit("comparison.csv", stats::comparison_csv(table));
    const auto text = stats::comparison_text(table);
    emit("comparison.txt", text);
    out_ << text;
  }

  void agreement() {
    require(config_.reference, "--reference");
    const auto a = load_corpus(config_.corpus);
    const auto b = load_corpus(config_.reference);
    const auto rows = stats::agreement_report(a, b);
    emit("agreement.csv", stats::agreement_csv(rows));
    const auto text = stats::agreement_text(rows);
    emit("agreement.txt", text);
    out_ << text;
  }

  void write_manifest(int code) {
    const std::string canonical = canonical_config(command_, config_);
    char hash[17];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(io::fnv1a64(canonical)));
    ordered_json m;
    m["toolkit"] = "ether";
    m["toolkit_version"] = std::string(toolkit_version());
    m["command"] = std::string(to_string(command_));
    m["exit_code"] = code;
    m["config_hash"] = std::string(hash);
    m["config"] = ordered_json::parse(canonical);
    if (!lexicon_source_.empty()) m["lexicon_source"] = lexicon_source_;
    m["artifacts"] = artifacts_;
    io::write_file(config_.output_dir / "manifest.json", m.dump(2) + "\n");
  }

  Command command_;
  const RunConfig& config_;
  std::ostream& out_;
  std::ostream& err_;
  std::vector<std::string> artifacts_;
  std::string lexicon_source_;
  bool with_vectors_ = false;
};

}  // namespace

int run(Command command, const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return Runner(command, config, out, err).exec();
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kIoError;
  } catch (const AlignmentError& e) {
    err << "alignment error: " << e.what() << "\n";
    return kAlignmentError;
  } catch (const Error& e) {
    // ValidationError, ParseError and InvalidArgument on input data.
    err << "validation failure: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
}

}  // namespace ether::cli
