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

// Context dropout, VAD label withholding and deterministic epoch plans that
// a host trainer replays sample by sample.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ether/corpus.h"
#include "ether/incongruence.h"
#include "ether/lexicons.h"
#include "ether/rng.h"

namespace ether::masking {

using lexicons::MaskLexicon;

struct MaskResult {
  std::string text;
  std::size_t n_masked = 0;
};

// Replaces every lexicon token with the placeholder, leaving all other bytes
// untouched.
MaskResult mask_context(std::string_view text, const MaskLexicon& lexicon);

// True with probability p; consumes exactly one draw.
bool dropout_decision(rng::SplitMix64& rng, double p);

// Copy of `record` with the VAD annotation withheld.
corpus::DialoguePair strip_vad(const corpus::DialoguePair& record);

struct PlanEntry {
  std::string pair_id;
  double weight = 1.0;
  bool masked = false;
  std::optional<std::string> masked_text;  // present iff masked

  bool operator==(const PlanEntry&) const = default;
};

struct EpochPlan {
  std::uint64_t seed = 0;
  incongruence::WeightConfig config;
  std::size_t batch_size = 1;
  std::vector<PlanEntry> entries;
};

using SignalsById = std::map<std::string, incongruence::SampleSignals, std::less<>>;

// Indexes signals by pair_id. Throws AlignmentError on duplicates.
SignalsById index_signals(std::span<const incongruence::SampleSignals> signals);

// Walks the corpus in order in consecutive batches of `batch_size`. Weights
// come from weigh_batch() per batch (BatchMedian tau is per batch); each
// sample's masking decision is one draw from its own (seed, pair_id) stream,
// applied to the client utterance. Weights never consume randomness.
// Throws AlignmentError if a pair has no signals.
EpochPlan plan_epoch(const corpus::Corpus& corpus, const SignalsById& signals,
                     const incongruence::WeightConfig& config, const MaskLexicon& lexicon,
                     std::uint64_t seed, std::size_t batch_size);

// Header line with the run parameters, then one {pair_id, w, masked,
// masked_text?} object per entry.
std::string plan_jsonl(const EpochPlan& plan);

}  // namespace ether::masking
