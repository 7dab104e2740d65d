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

#include "ether/flat.h"

#include "ether/error.h"
#include "ether/metrics.h"

namespace ether::flat {

namespace {

void expect_size(std::size_t got, std::size_t want, const char* name) {
  if (got != want)
    throw InvalidArgument(std::string("flat batch: ") + name + " has " + std::to_string(got) +
                          " values, expected " + std::to_string(want));
}

}  // namespace

WeighResult weigh(const BatchView& batch, const incongruence::WeightConfig& config) {
  using incongruence::Scheme;
  std::vector<incongruence::SampleSignals> samples(batch.n);
  switch (config.scheme) {
    case Scheme::Continuous:
      expect_size(batch.vad_visual.size(), batch.n * 3, "vad_visual");
      expect_size(batch.vad_textual.size(), batch.n * 3, "vad_textual");
      if (batch.dim == 0) throw InvalidArgument("flat batch: embedding dim must be positive");
      expect_size(batch.z_visual.size(), batch.n * batch.dim, "z_visual");
      expect_size(batch.z_textual.size(), batch.n * batch.dim, "z_textual");
      for (std::size_t i = 0; i < batch.n; ++i) {
        auto& s = samples[i];
        s.vad_visual = incongruence::Vad{batch.vad_visual[3 * i], batch.vad_visual[3 * i + 1],
                                         batch.vad_visual[3 * i + 2]};
        s.vad_textual = incongruence::Vad{batch.vad_textual[3 * i], batch.vad_textual[3 * i + 1],
                                          batch.vad_textual[3 * i + 2]};
        const auto zv = batch.z_visual.subspan(i * batch.dim, batch.dim);
        const auto zt = batch.z_textual.subspan(i * batch.dim, batch.dim);
        s.z_visual.assign(zv.begin(), zv.end());
        s.z_textual.assign(zt.begin(), zt.end());
      }
      break;
    case Scheme::Binary:
      expect_size(batch.flags.size(), batch.n, "flags");
      for (std::size_t i = 0; i < batch.n; ++i) samples[i].incongruence_flag = batch.flags[i];
      break;
    case Scheme::Engagement:
      expect_size(batch.engagement.size(), batch.n, "engagement");
      for (std::size_t i = 0; i < batch.n; ++i) samples[i].engagement = batch.engagement[i];
      break;
  }
  auto weighted = incongruence::weigh_batch(samples, config);
  return {std::move(weighted.scores), std::move(weighted.weights)};
}

std::vector<double> score(std::string_view client_text, std::string_view response,
                          const lexicons::MarkerLexicons& lex,
                          const embeddings::VectorStore* store) {
  const auto row = metrics::score_pair(client_text, response, lex, store);
  std::vector<double> out;
  for (const auto& col : metrics::score_columns(store != nullptr)) out.push_back(row.at(col));
  return out;
}

}  // namespace ether::flat
