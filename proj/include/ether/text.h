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

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ether::text {

// A token is a maximal run of ASCII letters/digits or non-ASCII bytes (so
// UTF-8 words stay whole). Tokens are lowercased (ASCII only). Everything
// else separates tokens. No stemming.
struct TokenSpan {
  std::size_t begin;
  std::size_t end;
  std::string token;
};

std::vector<TokenSpan> token_spans(std::string_view text);
std::vector<std::string> tokenize(std::string_view text);

// Number of occurrences of `phrase` as a contiguous token subsequence of
// `tokens`. Overlapping occurrences count separately; empty phrases never
// match.
std::size_t count_phrase(const std::vector<std::string>& tokens,
                         const std::vector<std::string>& phrase);

}  // namespace ether::text
