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

#include "ether/masking.h"

#include "ether/error.h"
#include "ether/text.h"
#include "json.hpp"

namespace ether::masking {

MaskResult mask_context(std::string_view input, const MaskLexicon& lexicon) {
  MaskResult out;
  std::size_t copied = 0;
  for (const auto& span : text::token_spans(input)) {
    if (!lexicon.contains(span.token)) continue;
    out.text.append(input.substr(copied, span.begin - copied));
    out.text.append(lexicon.placeholder);
    copied = span.end;
    ++out.n_masked;
  }
  out.text.append(input.substr(copied));
  return out;
}

bool dropout_decision(rng::SplitMix64& rng, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("dropout probability outside [0,1]");
  return rng.uniform() < p;
}

corpus::DialoguePair strip_vad(const corpus::DialoguePair& record) {
  corpus::DialoguePair out = record;
  out.annotations.vad.reset();
  return out;
}

SignalsById index_signals(std::span<const incongruence::SampleSignals> signals) {
  SignalsById out;
  for (const auto& s : signals)
    if (!out.emplace(s.pair_id, s).second)
      throw AlignmentError("duplicate signals for pair '" + s.pair_id + "'");
  return out;
}

EpochPlan plan_epoch(const corpus::Corpus& corpus, const SignalsById& signals,
                     const incongruence::WeightConfig& config, const MaskLexicon& lexicon,
                     std::uint64_t seed, std::size_t batch_size) {
  if (batch_size == 0) throw InvalidArgument("batch_size must be positive");
  config.validate();
  EpochPlan plan{seed, config, batch_size, {}};
  plan.entries.reserve(corpus.pairs.size());

  std::vector<incongruence::SampleSignals> batch;
  for (std::size_t start = 0; start < corpus.pairs.size(); start += batch_size) {
    const std::size_t end = std::min(start + batch_size, corpus.pairs.size());
    batch.clear();
    for (std::size_t i = start; i < end; ++i) {
      auto it = signals.find(corpus.pairs[i].pair_id);
      if (it == signals.end())
        throw AlignmentError("no signals for pair '" + corpus.pairs[i].pair_id + "'");
      batch.push_back(it->second);
    }
    const auto weighted = incongruence::weigh_batch(batch, config);
    for (std::size_t i = start; i < end; ++i) {
      const auto& pair = corpus.pairs[i];
      PlanEntry e{pair.pair_id, weighted.weights[i - start], false, std::nullopt};
      auto stream = rng::stream_for(seed, pair.pair_id);
      if (dropout_decision(stream, config.dropout_p)) {
        e.masked = true;
        e.masked_text = mask_context(pair.client.text, lexicon).text;
      }
      plan.entries.push_back(std::move(e));
    }
  }
  return plan;
}

std::string plan_jsonl(const EpochPlan& plan) {
  nlohmann::ordered_json header;
  header["seed"] = plan.seed;
  header["generator"] = std::string(rng::kGeneratorName);
  header["scheme"] = std::string(incongruence::to_string(plan.config.scheme));
  header["gamma"] = plan.config.gamma;
  header["lambda"] = plan.config.lambda;
  header["tau"] = incongruence::to_string(plan.config.tau);
  header["normalize"] = plan.config.normalize;
  header["invert_engagement"] = plan.config.invert_engagement;
  header["dropout_p"] = plan.config.dropout_p;
  header["batch_size"] = plan.batch_size;
  header["n_entries"] = plan.entries.size();
  std::string out = header.dump() + "\n";
  for (const auto& e : plan.entries) {
    nlohmann::ordered_json j;
    j["pair_id"] = e.pair_id;
    j["w"] = e.weight;
    j["masked"] = e.masked;
    if (e.masked_text) j["masked_text"] = *e.masked_text;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace ether::masking
