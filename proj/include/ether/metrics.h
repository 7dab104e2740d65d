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

// Lexical-marker metrics for counsellor-style responses, scored on [0,1]:
//
//   empathic_authenticity  = 0.5*min(1, ack/2) + 0.5*(1 - min(1, performative/2))
//   responsive_engagement  = 0.5*min(1, situational/2) + 0.5*mirror
//   therapeutic_concision  = 0.4*min(1, clarity/2) + 0.4*min(1, purpose/2) + 0.2*brevity
//   empathic_understanding = min(1, (empathy + curiosity)/3)
//   positive_regard        = clamp(min(1, acceptance/2) - 0.5*min(1, directive), 0, 1)
//   congruence             = 0.5*min(1, authenticity/2) + 0.5*concept_sim   (with vectors)
//                          = min(1, authenticity/2)                          (without)
//   pct_adherence          = mean(rogers mean, empathic_authenticity, therapeutic_concision)
//
// mirror is the clamped cosine between pooled client and response embeddings
// when a vector store is given, otherwise the Jaccard overlap of content
// words. brevity = clamp((60 - words)/50, 0, 1) over whitespace-separated
// words. Marker counts are case-insensitive contiguous token matches.
//
// semantic_prf() is a greedy token-matching precision/recall/F1 over static
// word vectors. It approximates BERTScore-style matching and is not
// equivalent to it.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ether/corpus.h"
#include "ether/embeddings.h"
#include "ether/lexicons.h"

namespace ether::metrics {

using embeddings::VectorStore;
using lexicons::MarkerLexicons;

struct MetricScore {
  double value = 0.0;
  std::map<std::string, double> components;
  std::map<std::string, std::size_t> marker_hits;
};

struct RogersScores {
  double empathic_understanding = 0.0;
  double positive_regard = 0.0;
  double congruence = 0.0;
  double mean = 0.0;
  std::map<std::string, std::size_t> marker_hits;
};

struct SemanticPRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

MetricScore empathic_authenticity(std::string_view response, const MarkerLexicons& lex);
MetricScore responsive_engagement(std::string_view response, std::string_view client_text,
                                  const MarkerLexicons& lex,
                                  const VectorStore* store = nullptr);
MetricScore therapeutic_concision(std::string_view response, const MarkerLexicons& lex);
RogersScores rogers_conditions(std::string_view response, const MarkerLexicons& lex,
                               const VectorStore* store = nullptr);
MetricScore pct_adherence(std::string_view response, std::string_view client_text,
                          const MarkerLexicons& lex, const VectorStore* store = nullptr);
SemanticPRF semantic_prf(std::string_view candidate, std::string_view reference,
                         const VectorStore& store);
// min(1, questions / max(1, sentences)); sentences end at runs of . ! ?
MetricScore question_density(std::string_view response);

// Total number of marker occurrences of any phrase in `set`.
std::size_t count_markers(const std::vector<std::string>& tokens, const lexicons::PhraseSet& set);

// Content-word Jaccard overlap used for mirroring without vectors. 0 when both
// sides have no content words.
double content_jaccard(std::string_view a, std::string_view b);

// brevity = clamp((60 - words)/(60 - 10), 0, 1)
inline constexpr std::size_t kBrevityLong = 60;
inline constexpr std::size_t kBrevityShort = 10;
double brevity(std::string_view response);

// All metric values and sub-components for one response, keyed by the column
// names returned from score_columns().
using MetricRow = std::map<std::string, double>;

MetricRow score_pair(std::string_view client_text, std::string_view response,
                     const MarkerLexicons& lex, const VectorStore* store = nullptr);

// Column order of score CSVs. Semantic P/R/F1 columns exist only with vectors.
std::vector<std::string> score_columns(bool with_vectors);
// The headline metrics compared across systems (a subset of score_columns()).
std::vector<std::string> headline_metrics(bool with_vectors);

struct CorpusScores {
  bool with_vectors = false;
  std::vector<std::string> pair_ids;  // corpus order
  std::map<std::string, std::vector<double>> columns;
  std::vector<std::string> missing;  // corpus pairs without a response
};

using Responses = std::map<std::string, std::string, std::less<>>;

// Responses JSONL: {pair_id, response}. Throws ParseError / AlignmentError on
// duplicate ids.
Responses parse_responses(std::string_view jsonl);
Responses load_responses(const std::filesystem::path& path);

// Scores every corpus pair that has a response against its client utterance.
// Throws AlignmentError if a response names a pair not in the corpus.
CorpusScores score_corpus(const Responses& responses, const corpus::Corpus& corpus,
                          const MarkerLexicons& lex, const VectorStore* store = nullptr);

// One row per scored pair, one column per score_columns() entry, 6 decimals.
std::string scores_csv(const CorpusScores& scores);
// {"n": .., "missing": [...], "metrics": {name: {"mean": .., "sd": ..}}}
std::string scores_summary_json(const CorpusScores& scores);

}  // namespace ether::metrics
