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

#include "ether/corpus.h"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "ether/error.h"
#include "ether/io.h"
#include "json.hpp"

namespace ether::corpus {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(IncongruenceKind kind) {
  switch (kind) {
    case IncongruenceKind::None: return "none";
    case IncongruenceKind::Minimizing: return "minimizing";
    case IncongruenceKind::Contradiction: return "contradiction";
    case IncongruenceKind::Unknown: break;
  }
  return "unknown";
}

IncongruenceKind parse_incongruence(std::string_view name) {
  if (name == "none") return IncongruenceKind::None;
  if (name == "minimizing") return IncongruenceKind::Minimizing;
  if (name == "contradiction") return IncongruenceKind::Contradiction;
  return IncongruenceKind::Unknown;
}

const DialoguePair* Corpus::find(std::string_view pair_id) const {
  for (const auto& p : pairs)
    if (p.pair_id == pair_id) return &p;
  return nullptr;
}

std::string describe(const Violation& v) {
  std::string out = v.field + ": " + v.rule;
  if (!v.observed.empty()) out += " (observed " + v.observed + ")";
  return out;
}

std::string format_report(const std::vector<LineViolation>& report) {
  std::string out;
  for (const auto& lv : report)
    out += "LINE " + std::to_string(lv.line) + ": " + describe(lv.violation) + "\n";
  return out;
}

namespace {

bool blank(std::string_view s) {
  for (unsigned char c : s)
    if (!std::isspace(c)) return false;
  return true;
}

void check_unit(std::vector<Violation>& out, const std::string& field, double x) {
  if (!(x >= 0.0 && x <= 1.0))
    out.push_back({field, io::format_number(x), "out of range [0,1]"});
}

void check_utterance(std::vector<Violation>& out, const std::string& name,
                     const Utterance& u, Speaker expected) {
  if (u.speaker != expected)
    out.push_back({name + ".speaker", "", "wrong speaker role"});
  if (blank(u.text)) out.push_back({name + ".text", "", "empty after trimming"});
  if (u.turn_index < 0)
    out.push_back({name + ".turn_index", std::to_string(u.turn_index), "negative"});
  if (u.timestamp_ms && *u.timestamp_ms < 0)
    out.push_back({name + ".timestamp_ms", std::to_string(*u.timestamp_ms), "negative"});
}

const json& require(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'", line);
  return *it;
}

std::string require_string(const json& obj, const char* key, std::size_t line) {
  const auto& v = require(obj, key, line);
  if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string", line);
  return v.get<std::string>();
}

double require_number(const json& obj, const char* key, std::size_t line) {
  const auto& v = require(obj, key, line);
  if (!v.is_number()) throw ParseError(std::string("field '") + key + "' must be a number", line);
  return v.get<double>();
}

std::int64_t require_integer(const json& obj, const char* key, std::size_t line) {
  const auto& v = require(obj, key, line);
  if (!v.is_number_integer())
    throw ParseError(std::string("field '") + key + "' must be an integer", line);
  return v.get<std::int64_t>();
}

Utterance parse_utterance(const json& obj, const char* key, Speaker speaker,
                          std::size_t line) {
  const auto& u = require(obj, key, line);
  if (!u.is_object()) throw ParseError(std::string("field '") + key + "' must be an object", line);
  Utterance out;
  out.speaker = speaker;
  out.text = require_string(u, "text", line);
  out.turn_index = require_integer(u, "turn_index", line);
  if (auto it = u.find("timestamp_ms"); it != u.end() && !it->is_null()) {
    if (!it->is_number_integer()) throw ParseError("field 'timestamp_ms' must be an integer", line);
    out.timestamp_ms = it->get<std::int64_t>();
  }
  return out;
}

ordered_json utterance_json(const Utterance& u) {
  ordered_json j;
  j["text"] = u.text;
  j["turn_index"] = u.turn_index;
  if (u.timestamp_ms) j["timestamp_ms"] = *u.timestamp_ms;
  return j;
}

std::optional<double> read_manifest_hours(const std::filesystem::path& path) {
  const json m = io::parse_json(io::read_file(path), path.string());
  auto it = m.find("recorded_hours");
  if (it == m.end() || it->is_null()) return std::nullopt;
  if (!it->is_number() || !(it->get<double>() > 0.0))
    throw ValidationError(path.string() + ": recorded_hours must be a positive number");
  return it->get<double>();
}

struct Checked {
  std::size_t line;
  DialoguePair record;
  std::vector<Violation> violations;
};

// Runs record checks plus the corpus-level ones. A record with violations is
// never admitted, so later duplicate/turn-order checks only see admitted rows.
std::vector<Checked> check_all(std::string_view jsonl) {
  std::vector<Checked> out;
  std::set<std::string> seen;
  std::map<std::string, std::int64_t> last_turn;
  io::for_each_line(jsonl, [&](std::string_view line, std::size_t line_no) {
    Checked c{line_no, parse_record(line, line_no), {}};
    c.violations = validate_record(c.record);
    if (c.violations.empty()) {
      const auto& r = c.record;
      if (seen.count(r.pair_id)) {
        c.violations.push_back({"pair_id", r.pair_id, "duplicate id"});
      } else {
        auto it = last_turn.find(r.session_id);
        if (it != last_turn.end() && r.client.turn_index <= it->second)
          c.violations.push_back({"client.turn_index", std::to_string(r.client.turn_index),
                                  "not increasing within session"});
        if (r.counsellor.turn_index <= r.client.turn_index)
          c.violations.push_back({"counsellor.turn_index",
                                  std::to_string(r.counsellor.turn_index),
                                  "not increasing within session"});
      }
      if (c.violations.empty()) {
        seen.insert(r.pair_id);
        last_turn[r.session_id] = r.counsellor.turn_index;
      }
    }
    out.push_back(std::move(c));
  });
  return out;
}

}  // namespace

std::vector<Violation> validate_record(const DialoguePair& r) {
  std::vector<Violation> out;
  if (r.pair_id.empty()) out.push_back({"pair_id", "", "empty"});
  if (r.session_id.empty()) out.push_back({"session_id", "", "empty"});
  check_utterance(out, "client", r.client, Speaker::Client);
  check_utterance(out, "counsellor", r.counsellor, Speaker::Counsellor);
  if (r.frame_ref.empty()) out.push_back({"frame_ref", "", "empty"});
  if (!r.annotations.vad) {
    out.push_back({"vad", "", "missing"});
  } else {
    check_unit(out, "vad.valence", r.annotations.vad->valence);
    check_unit(out, "vad.arousal", r.annotations.vad->arousal);
    check_unit(out, "vad.dominance", r.annotations.vad->dominance);
  }
  if (r.annotations.incongruence == IncongruenceKind::Unknown)
    out.push_back({"incongruence", "", "unknown kind"});
  check_unit(out, "engagement", r.annotations.engagement);
  return out;
}

DialoguePair parse_record(std::string_view line, std::size_t line_no) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
  }
  if (!j.is_object()) throw ParseError("record must be a JSON object", line_no);

  DialoguePair r;
  r.pair_id = require_string(j, "pair_id", line_no);
  r.session_id = require_string(j, "session_id", line_no);
  r.client = parse_utterance(j, "client", Speaker::Client, line_no);
  r.counsellor = parse_utterance(j, "counsellor", Speaker::Counsellor, line_no);
  r.frame_ref = require_string(j, "frame_ref", line_no);
  if (auto it = j.find("vad"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw ParseError("field 'vad' must be an object", line_no);
    r.annotations.vad = VadAnnotation{require_number(*it, "valence", line_no),
                                      require_number(*it, "arousal", line_no),
                                      require_number(*it, "dominance", line_no)};
  }
  r.annotations.incongruence = parse_incongruence(require_string(j, "incongruence", line_no));
  r.annotations.engagement = require_number(j, "engagement", line_no);
  return r;
}

std::string serialize_record(const DialoguePair& r) {
  ordered_json j;
  j["pair_id"] = r.pair_id;
  j["session_id"] = r.session_id;
  j["client"] = utterance_json(r.client);
  j["counsellor"] = utterance_json(r.counsellor);
  j["frame_ref"] = r.frame_ref;
  if (r.annotations.vad) {
    ordered_json v;
    v["valence"] = r.annotations.vad->valence;
    v["arousal"] = r.annotations.vad->arousal;
    v["dominance"] = r.annotations.vad->dominance;
    j["vad"] = v;
  }
  j["incongruence"] = std::string(to_string(r.annotations.incongruence));
  j["engagement"] = r.annotations.engagement;
  return j.dump();
}

std::vector<LineViolation> check_corpus_text(std::string_view jsonl) {
  std::vector<LineViolation> out;
  for (auto& c : check_all(jsonl))
    for (auto& v : c.violations) out.push_back({c.line, c.record.pair_id, std::move(v)});
  return out;
}

LoadResult load_corpus_text(std::string_view jsonl, const LoadOptions& options) {
  LoadResult result;
  for (auto& c : check_all(jsonl)) {
    if (!c.violations.empty()) {
      std::vector<LineViolation> report;
      for (auto& v : c.violations) report.push_back({c.line, c.record.pair_id, std::move(v)});
      if (options.strict) throw ValidationError(format_report(report));
      result.dropped.insert(result.dropped.end(), report.begin(), report.end());
      continue;
    }
    result.corpus.sessions.insert(c.record.session_id);
    result.corpus.pairs.push_back(std::move(c.record));
  }
  if (!options.manifest.empty())
    result.corpus.recorded_hours = read_manifest_hours(options.manifest);
  return result;
}

LoadResult load_corpus(const std::filesystem::path& path, const LoadOptions& options) {
  const std::string text = io::read_file(path);
  LoadOptions opts = options;
  if (opts.manifest.empty()) {
    auto sidecar = path;
    sidecar += ".manifest.json";
    if (std::filesystem::exists(sidecar)) opts.manifest = sidecar;
  }
  return load_corpus_text(text, opts);
}

std::string serialize_corpus(const Corpus& corpus) {
  std::string out;
  for (const auto& p : corpus.pairs) out += serialize_record(p) + "\n";
  return out;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  io::write_file(path, serialize_corpus(corpus));
  if (corpus.recorded_hours) {
    ordered_json m;
    m["recorded_hours"] = *corpus.recorded_hours;
    auto sidecar = path;
    sidecar += ".manifest.json";
    io::write_file(sidecar, m.dump(2) + "\n");
  }
}

std::string_view to_string(EngagementBand band) {
  switch (band) {
    case EngagementBand::Low: return "low";
    case EngagementBand::Moderate: return "moderate";
    case EngagementBand::High: return "high";
  }
  return "";
}

EngagementBand engagement_band(double score) {
  if (!(score >= 0.0 && score <= 1.0))
    throw InvalidArgument("engagement score out of [0,1]: " + io::format_number(score));
  if (score <= 0.3) return EngagementBand::Low;
  if (score <= 0.7) return EngagementBand::Moderate;
  return EngagementBand::High;
}

CorpusStats corpus_stats(const Corpus& corpus) {
  CorpusStats s;
  s.n_pairs = corpus.pairs.size();
  s.n_utterances = 2 * s.n_pairs;
  s.n_annotations = kAnnotationDims * s.n_pairs;
  for (const auto& p : corpus.pairs)
    if (p.annotations.incongruence != IncongruenceKind::None) ++s.n_incongruent;
  s.incongruent_fraction =
      s.n_pairs ? static_cast<double>(s.n_incongruent) / static_cast<double>(s.n_pairs) : 0.0;
  if (corpus.recorded_hours)
    s.annotations_per_hour = static_cast<double>(s.n_annotations) / *corpus.recorded_hours;
  return s;
}

std::string stats_json(const CorpusStats& s) {
  ordered_json j;
  j["n_pairs"] = s.n_pairs;
  j["n_utterances"] = s.n_utterances;
  j["n_incongruent"] = s.n_incongruent;
  j["incongruent_fraction"] = s.incongruent_fraction;
  j["incongruent_percent_display"] = io::format_fixed(100.0 * s.incongruent_fraction, 1);
  j["n_annotations"] = s.n_annotations;
  if (s.annotations_per_hour)
    j["annotations_per_hour"] = *s.annotations_per_hour;
  else
    j["annotations_per_hour"] = nullptr;
  return j.dump(2) + "\n";
}

}  // namespace ether::corpus
