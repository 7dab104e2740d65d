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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ether/error.h"
#include "ether/incongruence.h"
#include "ether/io.h"
#include "ether/run.h"

namespace {

constexpr const char* kCommandHelp =
    "validate | stats | weights | plan | mask | score | compare | agreement";

}  // namespace

int main(int argc, char** argv) {
  using ether::cli::RunConfig;

  CLI::App app{"Incongruence weighting, epoch plans and PCT-style response metrics"};
  app.set_version_flag("--version", std::string(ether::cli::toolkit_version()));

  std::string command_name;
  std::string config_path;
  std::optional<std::string> corpus, signals, vectors, lexicons, reference, out, baseline;
  std::vector<std::string> responses;
  std::optional<std::string> scheme, tau;
  std::optional<double> gamma, lambda, dropout_p;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> batch_size;
  bool normalize = false, invert = false, strict = false, lenient = false;

  app.add_option("command", command_name, kCommandHelp)->required();
  app.add_option("--config", config_path, "JSON file with flat RunConfig keys; flags override it");
  app.add_option("--corpus", corpus, "corpus JSONL");
  app.add_option("--signals", signals, "per-sample signals JSONL");
  app.add_option("--responses", responses, "system responses as name=path (repeatable)");
  app.add_option("--vectors", vectors, "word vectors (token v1 ... vd per line)");
  app.add_option("--lexicons", lexicons, "lexicon JSON (fallback: $ETHER_LEXICONS)");
  app.add_option("--reference", reference, "second annotated corpus for agreement");
  app.add_option("--baseline", baseline, "baseline system for compare (default: first)");
  app.add_option("--scheme", scheme, "continuous | binary | engagement");
  app.add_option("--gamma", gamma, "weight exponent in [0.8,1.2]");
  app.add_option("--lambda", lambda, "embedding-distance coefficient (>= 0)");
  app.add_option("--tau", tau, "median | fixed:<x>");
  app.add_flag("--normalize", normalize, "rescale weights to batch mean 1");
  app.add_flag("--invert-engagement", invert, "engagement scheme: w = 1 + (1 - E)");
  app.add_option("--dropout-p", dropout_p, "context dropout probability in [0,1]");
  app.add_option("--seed", seed, "64-bit seed (required by plan)");
  app.add_option("--batch-size", batch_size, "samples per batch");
  app.add_option("--out", out, "output directory");
  auto* strict_flag = app.add_flag("--strict", strict, "abort on any invalid record (default)");
  app.add_flag("--lenient", lenient, "drop invalid records and report them")->excludes(strict_flag);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ether::cli::kConfigError;
  }

  const auto command = ether::cli::parse_command(command_name);
  if (!command) {
    std::cerr << "unknown command '" << command_name << "' (expected " << kCommandHelp << ")\n";
    return ether::cli::kConfigError;
  }

  RunConfig config;
  try {
    if (!config_path.empty())
      ether::cli::apply_config_json(config, ether::io::read_file(config_path), config_path);
    if (corpus) config.corpus = *corpus;
    if (signals) config.signals = *signals;
    if (vectors) config.vectors = *vectors;
    if (lexicons) config.lexicons = *lexicons;
    if (reference) config.reference = *reference;
    if (out) config.output_dir = *out;
    if (baseline) config.baseline = *baseline;
    if (!responses.empty()) {
      config.responses.clear();
      for (const auto& r : responses) config.responses.push_back(ether::cli::parse_named_path(r));
    }
    if (scheme) config.weights.scheme = ether::incongruence::parse_scheme(*scheme);
    if (tau) config.weights.tau = ether::incongruence::parse_tau(*tau);
    if (gamma) config.weights.gamma = *gamma;
    if (lambda) config.weights.lambda = *lambda;
    if (dropout_p) config.weights.dropout_p = *dropout_p;
    if (normalize) config.weights.normalize = true;
    if (invert) config.weights.invert_engagement = true;
    if (seed) config.seed = *seed;
    if (batch_size) config.batch_size = *batch_size;
    if (strict) config.strict = true;
    if (lenient) config.strict = false;
  } catch (const ether::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return ether::cli::kIoError;
  } catch (const ether::Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ether::cli::kConfigError;
  }

  return ether::cli::run(*command, config, std::cout, std::cerr);
}
