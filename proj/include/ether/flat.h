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

// Flat-array entry points for in-process callers (language bindings, host
// training loops). Data crosses as contiguous numeric arrays and UTF-8
// strings; results are identical to weigh_batch() and score_pair().

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ether/embeddings.h"
#include "ether/incongruence.h"
#include "ether/lexicons.h"

namespace ether::flat {

// One batch of n samples, row-major. Arrays a scheme does not use may be
// empty: Continuous needs vad_* (n*3) and z_* (n*dim); Binary needs flags
// (n, values 0/1); Engagement needs engagement (n).
struct BatchView {
  std::size_t n = 0;
  std::size_t dim = 0;
  std::span<const double> vad_visual;
  std::span<const double> vad_textual;
  std::span<const double> z_visual;
  std::span<const double> z_textual;
  std::span<const std::int32_t> flags;
  std::span<const double> engagement;
};

struct WeighResult {
  std::vector<double> s;
  std::vector<double> w;
};

// Throws InvalidArgument on a shape mismatch or a missing scheme field.
WeighResult weigh(const BatchView& batch, const incongruence::WeightConfig& config);

// Metric values in metrics::score_columns() order.
std::vector<double> score(std::string_view client_text, std::string_view response,
                          const lexicons::MarkerLexicons& lex,
                          const embeddings::VectorStore* store = nullptr);

}  // namespace ether::flat
