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

// Marker-phrase lexicons for the metric suite and the token lexicon used for
// context masking. Both ship with defaults (data/lexicons.json mirrors them)
// and can be overridden from one JSON file:
//
//   {"markers": {"acknowledgment": [...], ...},
//    "mask": {"emotion_terms": [...], "vad_field_names": [...], "placeholder": "[MASK]"}}
//
// Sections and keys that are absent keep their defaults.

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ether::lexicons {

// A phrase as written plus its tokenization; matching uses the tokens.
struct Phrase {
  std::string text;
  std::vector<std::string> tokens;

  bool operator==(const Phrase&) const = default;
};

using PhraseSet = std::vector<Phrase>;

// Builds a phrase set, dropping duplicates (by tokens) and keeping order.
// Throws InvalidArgument for a phrase with no tokens.
PhraseSet make_phrases(const std::vector<std::string>& texts);

struct MarkerLexicons {
  PhraseSet acknowledgment;
  PhraseSet performative;
  PhraseSet situational;
  PhraseSet clarity;
  PhraseSet purpose;
  PhraseSet empathy;
  PhraseSet curiosity;
  PhraseSet acceptance;
  PhraseSet directive;
  PhraseSet authenticity;
  std::vector<std::string> congruence_concepts;

  bool operator==(const MarkerLexicons&) const = default;

  // Throws ConfigError naming the first empty set.
  void validate() const;
  static const MarkerLexicons& defaults();
};

struct MaskLexicon {
  std::set<std::string> emotion_terms;
  std::set<std::string> vad_field_names;
  std::string placeholder = "[MASK]";

  bool operator==(const MaskLexicon&) const = default;

  bool contains(const std::string& token) const {
    return emotion_terms.count(token) || vad_field_names.count(token);
  }
  // Sets non-empty, entries single tokens, placeholder non-empty and none of
  // its tokens in either set. Throws ConfigError.
  void validate() const;
  static const MaskLexicon& defaults();
};

struct Lexicons {
  MarkerLexicons markers = MarkerLexicons::defaults();
  MaskLexicon mask = MaskLexicon::defaults();
};

Lexicons parse_lexicons(std::string_view json_text, const std::string& origin = "lexicons");
Lexicons load_lexicons(const std::filesystem::path& path);
// Pretty-printed JSON in the file format above.
std::string lexicons_json(const Lexicons& lex);

}  // namespace ether::lexicons
