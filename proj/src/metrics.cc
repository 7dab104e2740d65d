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

#include "ether/metrics.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "ether/error.h"
#include "ether/io.h"
#include "ether/stats.h"
#include "ether/text.h"
#include "json.hpp"

namespace ether::metrics {

namespace {

double saturate(std::size_t hits, double at) {
  return std::min(1.0, static_cast<double>(hits) / at);
}

const std::set<std::string, std::less<>>& stopwords() {
  static const std::set<std::string, std::less<>> words = {
      "a",     "about", "after", "again", "all",   "am",    "an",    "and",   "any",
      "are",   "as",    "at",    "be",    "been",  "being", "but",   "by",    "can",
      "could", "d",     "did",   "do",    "does",  "doing", "don",   "for",   "from",
      "had",   "has",   "have",  "having", "he",   "her",   "here",  "him",   "his",
      "how",   "i",     "if",    "in",    "into",  "is",    "it",    "its",   "just",
      "ll",    "m",     "me",    "my",    "no",    "not",   "of",    "on",    "or",
      "our",   "out",   "re",    "s",     "she",   "so",    "some",  "t",     "than",
      "that",  "the",   "their", "them",  "then",  "there", "these", "they",  "this",
      "those", "to",    "too",   "um",    "umm",   "up",    "uh",    "ve",    "very",
      "was",   "we",    "were",  "what",  "when",  "where", "which", "who",   "why",
      "will",  "with",  "would", "yeah",  "yes",   "you",   "your",  "yours"};
  return words;
}

std::set<std::string> content_words(std::string_view s) {
  std::set<std::string> out;
  for (auto& t : text::tokenize(s))
    if (!stopwords().count(t)) out.insert(std::move(t));
  return out;
}

std::size_t whitespace_words(std::string_view s) {
  std::size_t n = 0;
  bool in_word = false;
  for (unsigned char c : s) {
    const bool ws = std::isspace(c);
    if (!ws && !in_word) ++n;
    in_word = !ws;
  }
  return n;
}

double clamped_cosine(const embeddings::Vector& a, const embeddings::Vector& b) {
  return std::max(0.0, embeddings::cosine(a, b));
}

}  // namespace

std::size_t count_markers(const std::vector<std::string>& tokens, const lexicons::PhraseSet& set) {
  std::size_t n = 0;
  for (const auto& p : set) n += text::count_phrase(tokens, p.tokens);
  return n;
}

double content_jaccard(std::string_view a, std::string_view b) {
  const auto wa = content_words(a);
  const auto wb = content_words(b);
  std::size_t inter = 0;
  for (const auto& w : wa) inter += wb.count(w);
  const std::size_t uni = wa.size() + wb.size() - inter;
  return uni ? static_cast<double>(inter) / static_cast<double>(uni) : 0.0;
}

double brevity(std::string_view response) {
  const double words = static_cast<double>(whitespace_words(response));
  const double span = static_cast<double>(kBrevityLong - kBrevityShort);
  return std::clamp((static_cast<double>(kBrevityLong) - words) / span, 0.0, 1.0);
}

MetricScore empathic_authenticity(std::string_view response, const MarkerLexicons& lex) {
  const auto tokens = text::tokenize(response);
  MetricScore m;
  const std::size_t ack = count_markers(tokens, lex.acknowledgment);
  const std::size_t perf = count_markers(tokens, lex.performative);
  m.marker_hits = {{"acknowledgment", ack}, {"performative", perf}};
  const double natural = saturate(ack, 2.0);
  const double non_performative = 1.0 - saturate(perf, 2.0);
  m.components = {{"acknowledgment", natural}, {"non_performative", non_performative}};
  m.value = 0.5 * natural + 0.5 * non_performative;
  return m;
}

MetricScore responsive_engagement(std::string_view response, std::string_view client_text,
                                  const MarkerLexicons& lex, const VectorStore* store) {
  const auto tokens = text::tokenize(response);
  MetricScore m;
  const std::size_t sit = count_markers(tokens, lex.situational);
  m.marker_hits = {{"situational", sit}};
  double mirror = 0.0;
  if (store) {
    mirror = clamped_cosine(embeddings::embed_text(client_text, *store).vector,
                            embeddings::embed_tokens(tokens, *store).vector);
  } else {
    mirror = content_jaccard(client_text, response);
  }
  const double situational = saturate(sit, 2.0);
  m.components = {{"situational", situational}, {"mirror", mirror}};
  m.value = 0.5 * situational + 0.5 * mirror;
  return m;
}

MetricScore therapeutic_concision(std::string_view response, const MarkerLexicons& lex) {
  const auto tokens = text::tokenize(response);
  MetricScore m;
  const std::size_t clarity = count_markers(tokens, lex.clarity);
  const std::size_t purpose = count_markers(tokens, lex.purpose);
  m.marker_hits = {{"clarity", clarity}, {"purpose", purpose}};
  const double c = saturate(clarity, 2.0);
  const double p = saturate(purpose, 2.0);
  const double b = brevity(response);
  m.components = {{"clarity", c}, {"purpose", p}, {"brevity", b}};
  m.value = 0.4 * c + 0.4 * p + 0.2 * b;
  return m;
}

RogersScores rogers_conditions(std::string_view response, const MarkerLexicons& lex,
                               const VectorStore* store) {
  const auto tokens = text::tokenize(response);
  RogersScores r;
  const std::size_t empathy = count_markers(tokens, lex.empathy);
  const std::size_t curiosity = count_markers(tokens, lex.curiosity);
  const std::size_t accept = count_markers(tokens, lex.acceptance);
  const std::size_t directive = count_markers(tokens, lex.directive);
  const std::size_t auth = count_markers(tokens, lex.authenticity);
  r.marker_hits = {{"empathy", empathy},     {"curiosity", curiosity}, {"acceptance", accept},
                   {"directive", directive}, {"authenticity", auth}};

  r.empathic_understanding = saturate(empathy + curiosity, 3.0);
  r.positive_regard =
      std::clamp(saturate(accept, 2.0) - 0.5 * saturate(directive, 1.0), 0.0, 1.0);
  if (store) {
    const auto concept_vec = embeddings::embed_tokens(lex.congruence_concepts, *store).vector;
    const double concept_sim =
        clamped_cosine(embeddings::embed_tokens(tokens, *store).vector, concept_vec);
    r.congruence = 0.5 * saturate(auth, 2.0) + 0.5 * concept_sim;
  } else {
    r.congruence = saturate(auth, 2.0);
  }
  r.mean = (r.empathic_understanding + r.positive_regard + r.congruence) / 3.0;
  return r;
}

MetricScore pct_adherence(std::string_view response, std::string_view /*client_text*/,
                          const MarkerLexicons& lex, const VectorStore* store) {
  const auto rogers = rogers_conditions(response, lex, store);
  const auto auth = empathic_authenticity(response, lex);
  const auto conc = therapeutic_concision(response, lex);
  MetricScore m;
  m.components = {{"rogers_mean", rogers.mean},
                  {"empathic_authenticity", auth.value},
                  {"therapeutic_concision", conc.value}};
  m.value = (rogers.mean + auth.value + conc.value) / 3.0;
  return m;
}

SemanticPRF semantic_prf(std::string_view candidate, std::string_view reference,
                         const VectorStore& store) {
  const auto cand = text::tokenize(candidate);
  const auto ref = text::tokenize(reference);
  SemanticPRF out;
  if (cand.empty() || ref.empty()) return out;

  // Best clamped cosine of every `from` token against the `to` tokens; OOV
  // tokens score 0. Identical tokens short-circuit to exactly 1.
  auto greedy = [&](const std::vector<std::string>& from, const std::vector<std::string>& to) {
    double sum = 0.0;
    for (const auto& a : from) {
      const auto* va = store.find(a);
      if (!va) continue;
      double best = 0.0;
      for (const auto& b : to) {
        if (a == b) {
          best = 1.0;
          break;
        }
        if (const auto* vb = store.find(b))
          best = std::max(best, std::clamp(embeddings::dot(*va, *vb), 0.0, 1.0));
      }
      sum += best;
    }
    return sum / static_cast<double>(from.size());
  };

  out.precision = greedy(cand, ref);
  out.recall = greedy(ref, cand);
  const double pr = out.precision + out.recall;
  out.f1 = pr > 0.0 ? 2.0 * out.precision * out.recall / pr : 0.0;
  return out;
}

MetricScore question_density(std::string_view response) {
  std::size_t sentences = 0;
  std::size_t questions = 0;
  bool content = false;
  std::size_t i = 0;
  while (i < response.size()) {
    const char c = response[i];
    if (c == '.' || c == '!' || c == '?') {
      bool question = false;
      while (i < response.size() &&
             (response[i] == '.' || response[i] == '!' || response[i] == '?')) {
        question = question || response[i] == '?';
        ++i;
      }
      if (content) {
        ++sentences;
        if (question) ++questions;
      }
      content = false;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) content = true;
    ++i;
  }
  if (content) ++sentences;

  MetricScore m;
  m.marker_hits = {{"questions", questions}, {"sentences", sentences}};
  m.value = std::min(1.0, static_cast<double>(questions) /
                              static_cast<double>(std::max<std::size_t>(1, sentences)));
  return m;
}

std::vector<std::string> score_columns(bool with_vectors) {
  std::vector<std::string> cols = {
      "empathic_authenticity", "acknowledgment",         "non_performative",
      "responsive_engagement", "situational",            "mirror",
      "therapeutic_concision", "clarity",                "purpose",
      "brevity",               "empathic_understanding", "positive_regard",
      "congruence",            "rogers_mean",            "pct_adherence",
      "question_density"};
  if (with_vectors) {
    cols.push_back("semantic_precision");
    cols.push_back("semantic_recall");
    cols.push_back("semantic_f1");
  }
  return cols;
}

std::vector<std::string> headline_metrics(bool with_vectors) {
  std::vector<std::string> cols = {"empathic_authenticity", "responsive_engagement",
                                   "therapeutic_concision", "empathic_understanding",
                                   "positive_regard",       "congruence",
                                   "pct_adherence",         "question_density"};
  if (with_vectors) cols.push_back("semantic_f1");
  return cols;
}

MetricRow score_pair(std::string_view client_text, std::string_view response,
                     const MarkerLexicons& lex, const VectorStore* store) {
  MetricRow row;
  const auto auth = empathic_authenticity(response, lex);
  const auto eng = responsive_engagement(response, client_text, lex, store);
  const auto conc = therapeutic_concision(response, lex);
  const auto rogers = rogers_conditions(response, lex, store);
  row["empathic_authenticity"] = auth.value;
  row["acknowledgment"] = auth.components.at("acknowledgment");
  row["non_performative"] = auth.components.at("non_performative");
  row["responsive_engagement"] = eng.value;
  row["situational"] = eng.components.at("situational");
  row["mirror"] = eng.components.at("mirror");
  row["therapeutic_concision"] = conc.value;
  row["clarity"] = conc.components.at("clarity");
  row["purpose"] = conc.components.at("purpose");
  row["brevity"] = conc.components.at("brevity");
  row["empathic_understanding"] = rogers.empathic_understanding;
  row["positive_regard"] = rogers.positive_regard;
  row["congruence"] = rogers.congruence;
  row["rogers_mean"] = rogers.mean;
  // Same arithmetic as pct_adherence(), reusing the component scores.
  row["pct_adherence"] = (rogers.mean + auth.value + conc.value) / 3.0;
  row["question_density"] = question_density(response).value;
  if (store) {
    const auto prf = semantic_prf(response, client_text, *store);
    row["semantic_precision"] = prf.precision;
    row["semantic_recall"] = prf.recall;
    row["semantic_f1"] = prf.f1;
  }
  return row;
}

Responses parse_responses(std::string_view jsonl) {
  Responses out;
  io::for_each_line(jsonl, [&](std::string_view line, std::size_t line_no) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    if (!j.is_object() || !j.contains("pair_id") || !j["pair_id"].is_string() ||
        !j.contains("response") || !j["response"].is_string())
      throw ParseError("response record needs string fields pair_id and response", line_no);
    auto id = j["pair_id"].get<std::string>();
    if (out.count(id))
      throw AlignmentError("line " + std::to_string(line_no) + ": duplicate response for '" +
                           id + "'");
    out.emplace(std::move(id), j["response"].get<std::string>());
  });
  return out;
}

Responses load_responses(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  try {
    return parse_responses(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

CorpusScores score_corpus(const Responses& responses, const corpus::Corpus& corpus,
                          const MarkerLexicons& lex, const VectorStore* store) {
  for (const auto& [id, text] : responses)
    if (!corpus.find(id)) throw AlignmentError("response for unknown pair '" + id + "'");

  CorpusScores out;
  out.with_vectors = store != nullptr;
  for (const auto& col : score_columns(out.with_vectors)) out.columns[col];
  for (const auto& pair : corpus.pairs) {
    auto it = responses.find(pair.pair_id);
    if (it == responses.end()) {
      out.missing.push_back(pair.pair_id);
      continue;
    }
    out.pair_ids.push_back(pair.pair_id);
    for (const auto& [col, value] : score_pair(pair.client.text, it->second, lex, store))
      out.columns[col].push_back(value);
  }
  return out;
}

std::string scores_csv(const CorpusScores& scores) {
  const auto cols = score_columns(scores.with_vectors);
  std::string out = "pair_id";
  for (const auto& c : cols) out += "," + c;
  out += "\n";
  for (std::size_t i = 0; i < scores.pair_ids.size(); ++i) {
    out += scores.pair_ids[i];
    for (const auto& c : cols) out += "," + io::format_fixed(scores.columns.at(c)[i], 6);
    out += "\n";
  }
  return out;
}

std::string scores_summary_json(const CorpusScores& scores) {
  nlohmann::ordered_json j;
  j["n"] = scores.pair_ids.size();
  j["missing"] = scores.missing;
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  for (const auto& c : score_columns(scores.with_vectors)) {
    const auto& xs = scores.columns.at(c);
    nlohmann::ordered_json m;
    if (xs.empty()) {
      m["mean"] = nullptr;
      m["sd"] = nullptr;
    } else {
      const auto s = stats::summarize(xs);
      m["mean"] = std::stod(io::format_fixed(s.mean, 6));
      if (s.sd)
        m["sd"] = std::stod(io::format_fixed(*s.sd, 6));
      else
        m["sd"] = nullptr;
    }
    metrics[c] = m;
  }
  j["metrics"] = metrics;
  return j.dump(2) + "\n";
}

}  // namespace ether::metrics
