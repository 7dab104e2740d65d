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

#include "ether/text.h"

namespace ether::text {

namespace {

bool token_byte(unsigned char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace

std::vector<TokenSpan> token_spans(std::string_view text) {
  std::vector<TokenSpan> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!token_byte(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    TokenSpan span{i, i, {}};
    while (i < text.size() && token_byte(static_cast<unsigned char>(text[i])))
      span.token.push_back(lower(text[i++]));
    span.end = i;
    out.push_back(std::move(span));
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (auto& s : token_spans(text)) out.push_back(std::move(s.token));
  return out;
}

std::size_t count_phrase(const std::vector<std::string>& tokens,
                         const std::vector<std::string>& phrase) {
  if (phrase.empty() || phrase.size() > tokens.size()) return 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
    std::size_t k = 0;
    while (k < phrase.size() && tokens[i + k] == phrase[k]) ++k;
    if (k == phrase.size()) ++n;
  }
  return n;
}

}  // namespace ether::text
