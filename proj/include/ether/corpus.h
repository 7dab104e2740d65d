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

// Corpus data model for annotated client/counsellor dialogue pairs, JSONL
// ingestion with validation, and dataset-level statistics.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ether::corpus {

enum class Speaker { Client, Counsellor };

struct Utterance {
  Speaker speaker = Speaker::Client;
  std::string text;
  std::int64_t turn_index = 0;
  std::optional<std::int64_t> timestamp_ms;

  bool operator==(const Utterance&) const = default;
};

// Valence, arousal and dominance, each on [0,1].
struct VadAnnotation {
  double valence = 0.0;
  double arousal = 0.0;
  double dominance = 0.0;

  bool operator==(const VadAnnotation&) const = default;
};

// `Unknown` only exists so that a record carrying a label outside the
// three-kind enum can be represented and reported by validate_record().
enum class IncongruenceKind { None, Minimizing, Contradiction, Unknown };

std::string_view to_string(IncongruenceKind kind);
// Returns Unknown for anything but "none", "minimizing", "contradiction".
IncongruenceKind parse_incongruence(std::string_view name);

struct AnnotationRecord {
  // Absent after strip_vad(); a loaded record without VAD is a violation.
  std::optional<VadAnnotation> vad;
  IncongruenceKind incongruence = IncongruenceKind::None;
  double engagement = 0.0;

  bool operator==(const AnnotationRecord&) const = default;
};

struct DialoguePair {
  std::string pair_id;
  std::string session_id;
  Utterance client;
  Utterance counsellor{Speaker::Counsellor, {}, 0, std::nullopt};
  std::string frame_ref;
  AnnotationRecord annotations;

  bool operator==(const DialoguePair&) const = default;
};

struct Corpus {
  std::vector<DialoguePair> pairs;
  std::set<std::string> sessions;
  std::optional<double> recorded_hours;

  bool operator==(const Corpus&) const = default;

  const DialoguePair* find(std::string_view pair_id) const;
};

struct Violation {
  std::string field;
  std::string observed;
  std::string rule;

  bool operator==(const Violation&) const = default;
};

// "<field>: <rule> (observed <value>)"
std::string describe(const Violation& v);

// Violations tied to an input line, rendered as `LINE <n>: <field>: <rule>`.
struct LineViolation {
  std::size_t line = 0;
  std::string pair_id;
  Violation violation;
};

std::string format_report(const std::vector<LineViolation>& report);

// Per-record checks. Empty iff every record-local invariant holds.
std::vector<Violation> validate_record(const DialoguePair& record);

struct LoadResult {
  Corpus corpus;
  // Violations of dropped records (lenient mode only; strict throws).
  std::vector<LineViolation> dropped;
};

struct LoadOptions {
  bool strict = true;
  // Sidecar manifest; when empty `<path>.manifest.json` is used if present.
  std::filesystem::path manifest;
};

// Parses one JSONL record. Throws ParseError on malformed JSON or missing or
// mistyped fields; range violations are left for validate_record().
DialoguePair parse_record(std::string_view line, std::size_t line_no = 0);
std::string serialize_record(const DialoguePair& record);

LoadResult load_corpus(const std::filesystem::path& path,
                       const LoadOptions& options = {});
// Same as load_corpus() but reads from an in-memory JSONL buffer.
LoadResult load_corpus_text(std::string_view jsonl, const LoadOptions& options = {});

// Collects every violation in the file, including corpus-level ones
// (duplicate ids, non-increasing turn order), without throwing on them.
std::vector<LineViolation> check_corpus_text(std::string_view jsonl);

void save_corpus(const Corpus& corpus, const std::filesystem::path& path);
std::string serialize_corpus(const Corpus& corpus);

enum class EngagementBand { Low, Moderate, High };

std::string_view to_string(EngagementBand band);

// Low on [0,0.3], Moderate on (0.3,0.7], High on (0.7,1]. Throws
// InvalidArgument outside [0,1].
EngagementBand engagement_band(double score);

struct CorpusStats {
  std::size_t n_pairs = 0;
  std::size_t n_utterances = 0;
  std::size_t n_incongruent = 0;
  double incongruent_fraction = 0.0;
  std::size_t n_annotations = 0;
  std::optional<double> annotations_per_hour;
};

inline constexpr std::size_t kAnnotationDims = 5;

CorpusStats corpus_stats(const Corpus& corpus);
std::string stats_json(const CorpusStats& stats);

}  // namespace ether::corpus
