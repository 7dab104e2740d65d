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

#include "ether/lexicons.h"

#include "ether/error.h"
#include "ether/io.h"
#include "ether/text.h"
#include "json.hpp"

namespace ether::lexicons {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

PhraseSet make_phrases(const std::vector<std::string>& texts) {
  PhraseSet out;
  for (const auto& t : texts) {
    Phrase p{t, text::tokenize(t)};
    if (p.tokens.empty()) throw InvalidArgument("marker phrase '" + t + "' has no tokens");
    bool dup = false;
    for (const auto& q : out) dup = dup || q.tokens == p.tokens;
    if (!dup) out.push_back(std::move(p));
  }
  return out;
}

namespace {

// The first entries of each list are the marker examples the metric family
// is built around; the rest are extensions of this toolkit.
MarkerLexicons build_default_markers() {
  MarkerLexicons m;
  m.acknowledgment = make_phrases({"right", "okay", "actually", "interesting", "ok", "i see",
                                   "mhm", "got it", "fair enough"});
  m.performative = make_phrases({"i'm sorry to hear that", "i understand how you feel",
                                 "i understand what you're going through", "you are not alone",
                                 "you're not alone", "i'm here for you", "that must be so hard",
                                 "i can only imagine", "stay strong", "things will get better",
                                 "everything happens for a reason"});
  m.situational = make_phrases({"given", "considering", "in your situation", "in your case",
                                "in your position", "from what you've described",
                                "based on what you said"});
  m.clarity = make_phrases({"specifically", "exactly", "what i hear", "what i'm hearing",
                            "in other words", "to clarify", "let me make sure"});
  m.purpose = make_phrases({"to understand", "to help", "to explore", "so that we",
                            "to make sense of"});
  m.empathy = make_phrases({"you feel", "you're experiencing", "you're feeling", "you felt",
                            "it sounds like you", "you seem"});
  m.curiosity = make_phrases({"i'm wondering", "what's that like", "what that's like",
                              "i'm curious", "tell me more", "what was that like",
                              "how was that for you"});
  m.acceptance = make_phrases({"that makes sense", "that's understandable", "it makes sense",
                               "understandably", "it's okay to", "of course you"});
  m.directive = make_phrases({"you should", "you need to", "you must", "you have to",
                              "you ought to", "why don't you"});
  m.authenticity = make_phrases({"honestly", "to be honest", "i notice", "i'm noticing",
                                 "i find myself", "genuinely", "i have to admit"});
  m.congruence_concepts = {"genuine", "honest", "authentic", "real",   "open",
                           "sincere", "present", "aware",     "feeling", "trust"};
  return m;
}

MaskLexicon build_default_mask() {
  MaskLexicon m;
  m.emotion_terms = {
      "feel",     "feeling",    "feelings",  "felt",       "emotion",    "emotions",
      "emotional", "sad",       "sadness",   "happy",      "happiness",  "angry",
      "anger",    "upset",      "anxious",   "anxiety",    "afraid",     "scared",
      "fear",     "worried",    "worry",     "depressed",  "lonely",     "hurt",
      "frustrated", "overwhelmed", "stressed", "nervous",  "ashamed",    "guilty",
      "joy",      "excited",    "calm",      "relieved",   "hopeless",   "disappointed",
      "cry",      "crying",     "tears",     "grief",      "distressed", "miserable"};
  m.vad_field_names = {"valence", "arousal", "dominance", "vad"};
  return m;
}

std::vector<std::string> texts(const PhraseSet& set) {
  std::vector<std::string> out;
  for (const auto& p : set) out.push_back(p.text);
  return out;
}

struct NamedSet {
  const char* name;
  PhraseSet MarkerLexicons::*member;
};

constexpr NamedSet kPhraseSets[] = {
    {"acknowledgment", &MarkerLexicons::acknowledgment},
    {"performative", &MarkerLexicons::performative},
    {"situational", &MarkerLexicons::situational},
    {"clarity", &MarkerLexicons::clarity},
    {"purpose", &MarkerLexicons::purpose},
    {"empathy", &MarkerLexicons::empathy},
    {"curiosity", &MarkerLexicons::curiosity},
    {"acceptance", &MarkerLexicons::acceptance},
    {"directive", &MarkerLexicons::directive},
    {"authenticity", &MarkerLexicons::authenticity},
};

std::vector<std::string> string_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) throw ConfigError(where + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

}  // namespace

void MarkerLexicons::validate() const {
  for (const auto& s : kPhraseSets)
    if ((this->*s.member).empty()) throw ConfigError(std::string("marker set '") + s.name + "' is empty");
  if (congruence_concepts.empty()) throw ConfigError("marker set 'congruence_concepts' is empty");
}

const MarkerLexicons& MarkerLexicons::defaults() {
  static const MarkerLexicons m = build_default_markers();
  return m;
}

void MaskLexicon::validate() const {
  if (emotion_terms.empty()) throw ConfigError("mask lexicon: emotion_terms is empty");
  if (vad_field_names.empty()) throw ConfigError("mask lexicon: vad_field_names is empty");
  for (const auto* set : {&emotion_terms, &vad_field_names})
    for (const auto& t : *set) {
      const auto tokens = text::tokenize(t);
      if (tokens.size() != 1 || tokens[0] != t)
        throw ConfigError("mask lexicon: '" + t + "' is not a single lowercase token");
    }
  if (placeholder.empty()) throw ConfigError("mask lexicon: placeholder is empty");
  for (const auto& t : text::tokenize(placeholder))
    if (contains(t))
      throw ConfigError("mask lexicon: placeholder token '" + t + "' is itself masked");
}

const MaskLexicon& MaskLexicon::defaults() {
  static const MaskLexicon m = build_default_mask();
  return m;
}

Lexicons parse_lexicons(std::string_view json_text, const std::string& origin) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(origin + ": malformed JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError(origin + ": expected a JSON object");
  Lexicons lex;
  if (auto it = j.find("markers"); it != j.end()) {
    if (!it->is_object()) throw ConfigError(origin + ": 'markers' must be an object");
    for (const auto& s : kPhraseSets)
      if (auto f = it->find(s.name); f != it->end()) {
        try {
          lex.markers.*s.member = make_phrases(string_list(*f, origin + ": markers." + s.name));
        } catch (const InvalidArgument& e) {
          throw ConfigError(origin + ": " + e.what());
        }
      }
    if (auto f = it->find("congruence_concepts"); f != it->end())
      lex.markers.congruence_concepts = string_list(*f, origin + ": markers.congruence_concepts");
    for (auto f = it->begin(); f != it->end(); ++f) {
      bool known = f.key() == "congruence_concepts";
      for (const auto& s : kPhraseSets) known = known || f.key() == s.name;
      if (!known) throw ConfigError(origin + ": unknown marker set '" + f.key() + "'");
    }
  }
  if (auto it = j.find("mask"); it != j.end()) {
    if (!it->is_object()) throw ConfigError(origin + ": 'mask' must be an object");
    if (auto f = it->find("emotion_terms"); f != it->end()) {
      auto v = string_list(*f, origin + ": mask.emotion_terms");
      lex.mask.emotion_terms = {v.begin(), v.end()};
    }
    if (auto f = it->find("vad_field_names"); f != it->end()) {
      auto v = string_list(*f, origin + ": mask.vad_field_names");
      lex.mask.vad_field_names = {v.begin(), v.end()};
    }
    if (auto f = it->find("placeholder"); f != it->end()) {
      if (!f->is_string()) throw ConfigError(origin + ": mask.placeholder must be a string");
      lex.mask.placeholder = f->get<std::string>();
    }
  }
  lex.markers.validate();
  lex.mask.validate();
  return lex;
}

Lexicons load_lexicons(const std::filesystem::path& path) {
  return parse_lexicons(io::read_file(path), path.string());
}

std::string lexicons_json(const Lexicons& lex) {
  ordered_json markers;
  for (const auto& s : kPhraseSets) markers[s.name] = texts(lex.markers.*s.member);
  markers["congruence_concepts"] = lex.markers.congruence_concepts;
  ordered_json mask;
  mask["emotion_terms"] = std::vector<std::string>(lex.mask.emotion_terms.begin(),
                                                   lex.mask.emotion_terms.end());
  mask["vad_field_names"] = std::vector<std::string>(lex.mask.vad_field_names.begin(),
                                                     lex.mask.vad_field_names.end());
  mask["placeholder"] = lex.mask.placeholder;
  ordered_json j;
  j["markers"] = markers;
  j["mask"] = mask;
  return j.dump(2) + "\n";
}

}  // namespace ether::lexicons
