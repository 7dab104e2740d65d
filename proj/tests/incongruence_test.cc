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

#include "ether/incongruence.h"

#include <gtest/gtest.h>

#include <array>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ether/error.h"
#include "ether/io.h"
#include "test_util.h"

namespace ether::incongruence {
namespace {

SampleSignals congruent(const std::string& id, double mismatch_x = 0.0) {
  SampleSignals s;
  s.pair_id = id;
  s.vad_visual = Vad{0.0, 0.5, 0.5};
  s.vad_textual = Vad{mismatch_x, 0.5, 0.5};
  s.z_visual = {1.0, 0.0};
  s.z_textual = {1.0, 0.0};
  return s;
}

TEST(VadMismatch, Examples) {
  EXPECT_EQ(vad_mismatch({0.3, 0.3, 0.3}, {0.3, 0.3, 0.3}), 0.0);
  EXPECT_NEAR(vad_mismatch({0.8, 0.6, 0.5}, {0.2, 0.6, 0.5}), 0.6, 1e-15);
  EXPECT_NEAR(vad_mismatch({1, 1, 1}, {0, 0, 0}), std::sqrt(3.0), 1e-15);
}

TEST(BatchTau, Examples) {
  std::vector<double> a{0.5, 0.1, 0.3};
  EXPECT_EQ(batch_tau(a), 0.3);
  std::vector<double> b{0.4};
  EXPECT_EQ(batch_tau(b), 0.4);
  std::vector<double> c{0, 0, 0};
  EXPECT_EQ(batch_tau(c), 1e-6);
}

TEST(BatchTau, EvenLengthTakesLowerMiddle) {
  std::vector<double> a{0.4, 0.1, 0.3, 0.2};
  EXPECT_EQ(batch_tau(a), 0.2);
}

TEST(BatchTau, EmptyThrows) {
  EXPECT_THROW(batch_tau(std::vector<double>{}), InvalidArgument);
}

TEST(IncongruenceScore, Examples) {
  EXPECT_EQ(incongruence_score(0.0, 0.3, 1.0, 0.5), 0.0);
  EXPECT_EQ(incongruence_score(0.3, 0.3, 0.6, 0.5), 1.0);
  EXPECT_NEAR(incongruence_score(0.15, 0.3, 0.8, 0.5), 0.6, 1e-15);
}

TEST(IncongruenceScore, AntiAlignedClipsToOne) {
  EXPECT_EQ(incongruence_score(0.0, 1.0, -1.0, 0.5), 1.0);
  EXPECT_EQ(incongruence_score(0.0, 1.0, -1.0, 0.25), 0.5);
}

TEST(IncongruenceScore, RejectsNonPositiveTau) {
  EXPECT_THROW(incongruence_score(0.1, 0.0, 1.0, 0.5), InvalidArgument);
  EXPECT_THROW(incongruence_score(0.1, -1.0, 1.0, 0.5), InvalidArgument);
}

TEST(SampleWeight, Examples) {
  EXPECT_EQ(sample_weight(0.0, 1.0), 1.0);
  EXPECT_EQ(sample_weight(0.0, 0.8), 1.0);
  for (double g : {0.8, 0.9, 1.0, 1.1, 1.2}) EXPECT_EQ(sample_weight(1.0, g), 2.0);
  EXPECT_EQ(sample_weight(0.5, 1.0), 1.5);
  // 1 + 0.25**0.8, reference value computed independently.
  EXPECT_NEAR(sample_weight(0.25, 0.8), 1.3298769776932235, 1e-15);
}

TEST(SampleWeight, OutOfRangeThrows) {
  EXPECT_THROW(sample_weight(1.1, 1.0), InvalidArgument);
  EXPECT_THROW(sample_weight(-0.1, 1.0), InvalidArgument);
  EXPECT_THROW(sample_weight(0.5, 0.79), InvalidArgument);
  EXPECT_THROW(sample_weight(0.5, 1.21), InvalidArgument);
}

TEST(SampleWeight, Sharpening) {
  for (double s : {0.1, 0.5, 0.9}) {
    EXPECT_GT(sample_weight(s, 0.8), sample_weight(s, 1.0));
    EXPECT_GT(sample_weight(s, 1.0), sample_weight(s, 1.2));
  }
}

TEST(BinaryWeight, Examples) {
  EXPECT_EQ(binary_weight(0), 1.0);
  EXPECT_EQ(binary_weight(1), 2.0);
  for (double g : {0.8, 1.0, 1.2}) EXPECT_EQ(binary_weight(1), sample_weight(1.0, g));
  EXPECT_THROW(binary_weight(2), InvalidArgument);
}

TEST(EngagementWeight, Examples) {
  EXPECT_EQ(engagement_weight(0.0), 1.0);
  EXPECT_EQ(engagement_weight(1.0), 2.0);
  EXPECT_EQ(engagement_weight(0.45), 1.45);
  EXPECT_EQ(engagement_weight(0.0, true), 2.0);
  EXPECT_EQ(engagement_weight(1.0, true), 1.0);
  EXPECT_THROW(engagement_weight(1.2), InvalidArgument);
}

TEST(NormalizeBatch, Examples) {
  EXPECT_EQ(normalize_batch(std::vector<double>{1, 1, 1}), (std::vector<double>{1, 1, 1}));
  auto r = normalize_batch(std::vector<double>{1, 2});
  EXPECT_NEAR(r[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r[1], 4.0 / 3.0, 1e-15);
  EXPECT_EQ(normalize_batch(std::vector<double>{2, 2, 2}), (std::vector<double>{1, 1, 1}));
}

TEST(NormalizeBatch, Errors) {
  EXPECT_THROW(normalize_batch(std::vector<double>{}), InvalidArgument);
  EXPECT_THROW(normalize_batch(std::vector<double>{1, 0}), InvalidArgument);
}

TEST(WeightedObjective, Examples) {
  EXPECT_NEAR(weighted_objective(std::vector<double>{1, 1}, std::vector<double>{0.2, 0.4}), 0.3,
              1e-15);
  EXPECT_NEAR(weighted_objective(std::vector<double>{1, 2}, std::vector<double>{0.2, 0.4}), 0.5,
              1e-15);
  EXPECT_EQ(weighted_objective(std::vector<double>{1, 2}, std::vector<double>{0, 0}), 0.0);
}

TEST(WeightedObjective, Errors) {
  EXPECT_THROW(weighted_objective(std::vector<double>{1}, std::vector<double>{1, 2}),
               InvalidArgument);
  EXPECT_THROW(weighted_objective(std::vector<double>{}, std::vector<double>{}), InvalidArgument);
}

TEST(WeightedObjective, UniformWeightsGiveMean) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int i = 0; i < 200; ++i) {
    std::vector<double> losses(1 + i % 17);
    for (auto& x : losses) x = u(gen);
    std::vector<double> ones(losses.size(), 1.0);
    const double mean = std::accumulate(losses.begin(), losses.end(), 0.0) / losses.size();
    EXPECT_NEAR(weighted_objective(ones, losses), mean, 1e-12);
  }
}

TEST(WeighBatch, BinaryExample) {
  SampleSignals a, b;
  a.incongruence_flag = 0;
  b.incongruence_flag = 1;
  WeightConfig cfg;
  cfg.scheme = Scheme::Binary;
  auto r = weigh_batch(std::vector<SampleSignals>{a, b}, cfg);
  EXPECT_EQ(r.weights, (std::vector<double>{1, 2}));
  EXPECT_EQ(r.scores, (std::vector<double>{0, 1}));
}

TEST(WeighBatch, AllIdenticalSignals) {
  std::vector<SampleSignals> batch{congruent("a"), congruent("b"), congruent("c")};
  auto r = weigh_batch(batch, WeightConfig{});
  EXPECT_EQ(r.scores, (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(r.weights, (std::vector<double>{1, 1, 1}));
}

TEST(WeighBatch, ContinuousExample) {
  std::vector<SampleSignals> batch{congruent("a", 0.1), congruent("b", 0.3), congruent("c", 0.5)};
  auto r = weigh_batch(batch, WeightConfig{});
  ASSERT_EQ(r.scores.size(), 3u);
  EXPECT_NEAR(r.scores[0], 1.0 / 3.0, 1e-15);
  EXPECT_EQ(r.scores[1], 1.0);
  EXPECT_EQ(r.scores[2], 1.0);
  EXPECT_NEAR(r.weights[0], 4.0 / 3.0, 1e-15);
  EXPECT_EQ(r.weights[1], 2.0);
  EXPECT_EQ(r.weights[2], 2.0);
}

TEST(WeighBatch, FixedTau) {
  WeightConfig cfg;
  cfg.tau = TauMode::fixed(1.0);
  auto r = weigh_batch(std::vector<SampleSignals>{congruent("a", 0.25)}, cfg);
  EXPECT_NEAR(r.scores[0], 0.25, 1e-15);
}

TEST(WeighBatch, EngagementScheme) {
  SampleSignals a;
  a.engagement = 0.45;
  WeightConfig cfg;
  cfg.scheme = Scheme::Engagement;
  EXPECT_EQ(weigh_batch(std::vector<SampleSignals>{a}, cfg).weights[0], 1.45);
  cfg.invert_engagement = true;
  EXPECT_EQ(weigh_batch(std::vector<SampleSignals>{a}, cfg).weights[0], 1.55);
}

TEST(WeighBatch, MissingSchemeFieldThrows) {
  SampleSignals bare;
  bare.pair_id = "x";
  WeightConfig cfg;
  EXPECT_THROW(weigh_batch(std::vector<SampleSignals>{bare}, cfg), InvalidArgument);
  cfg.scheme = Scheme::Binary;
  EXPECT_THROW(weigh_batch(std::vector<SampleSignals>{bare}, cfg), InvalidArgument);
  cfg.scheme = Scheme::Engagement;
  EXPECT_THROW(weigh_batch(std::vector<SampleSignals>{bare}, cfg), InvalidArgument);
}

TEST(WeighBatch, NonUnitEmbeddingRejected) {
  auto s = congruent("a");
  s.z_visual = {2.0, 0.0};
  EXPECT_FALSE(check_signals(s).empty());
  EXPECT_THROW(weigh_batch(std::vector<SampleSignals>{s}, WeightConfig{}), InvalidArgument);
}

TEST(WeighBatch, NormalizeOption) {
  SampleSignals a, b;
  a.incongruence_flag = 0;
  b.incongruence_flag = 1;
  WeightConfig cfg;
  cfg.scheme = Scheme::Binary;
  cfg.normalize = true;
  auto r = weigh_batch(std::vector<SampleSignals>{a, b}, cfg);
  EXPECT_NEAR(r.weights[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.weights[1], 4.0 / 3.0, 1e-15);
}

SampleSignals random_sample(std::mt19937_64& gen, const std::string& id, std::size_t dim) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> n01;
  SampleSignals s;
  s.pair_id = id;
  s.vad_visual = Vad{u(gen), u(gen), u(gen)};
  s.vad_textual = Vad{u(gen), u(gen), u(gen)};
  auto unit = [&] {
    std::vector<double> v(dim);
    double n2 = 0;
    for (auto& x : v) {
      x = n01(gen);
      n2 += x * x;
    }
    for (auto& x : v) x /= std::sqrt(n2);
    return v;
  };
  s.z_visual = unit();
  s.z_textual = unit();
  s.incongruence_flag = u(gen) < 0.5 ? 1 : 0;
  s.engagement = u(gen);
  return s;
}

TEST(WeighBatch, PermutationEquivariant) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SampleSignals> batch;
    for (int i = 0; i < 9; ++i) batch.push_back(random_sample(gen, std::to_string(i), 4));
    auto base = weigh_batch(batch, WeightConfig{});
    std::vector<std::size_t> perm(batch.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<SampleSignals> shuffled;
    for (auto i : perm) shuffled.push_back(batch[i]);
    auto r = weigh_batch(shuffled, WeightConfig{});
    for (std::size_t k = 0; k < perm.size(); ++k) EXPECT_EQ(r.weights[k], base.weights[perm[k]]);
  }
}

TEST(WeighBatch, BoundsOnRandomBatches) {
  std::mt19937_64 gen(29);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<SampleSignals> batch;
    for (int i = 0; i < 1 + trial % 11; ++i) batch.push_back(random_sample(gen, "x", 3));
    WeightConfig cfg;
    cfg.gamma = std::array{0.8, 0.9, 1.0, 1.1, 1.2}[trial % 5];
    auto r = weigh_batch(batch, cfg);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      EXPECT_GE(r.scores[i], 0.0);
      EXPECT_LE(r.scores[i], 1.0);
      EXPECT_GE(r.weights[i], 1.0);
      EXPECT_LE(r.weights[i], 2.0);
    }
  }
}

TEST(WeighBatch, BinaryMatchesContinuousAtEndpoints) {
  // Sample 0 is fully congruent (s = 0); sample 1 is anti-aligned (s = 1).
  auto a = congruent("a");
  auto b = congruent("b");
  b.z_textual = {-1.0, 0.0};
  a.incongruence_flag = 0;
  b.incongruence_flag = 1;
  std::vector<SampleSignals> batch{a, b};
  auto cont = weigh_batch(batch, WeightConfig{});
  WeightConfig bin;
  bin.scheme = Scheme::Binary;
  EXPECT_EQ(cont.weights, weigh_batch(batch, bin).weights);
}

TEST(Config, ParseAndValidate) {
  EXPECT_EQ(parse_scheme("binary"), Scheme::Binary);
  EXPECT_THROW(parse_scheme("Binary"), ConfigError);
  EXPECT_EQ(parse_tau("median").kind, TauMode::Kind::BatchMedian);
  EXPECT_EQ(parse_tau("fixed:0.25").value, 0.25);
  EXPECT_EQ(to_string(parse_tau("fixed:0.25")), "fixed:0.25");
  EXPECT_THROW(parse_tau("fixed:0"), ConfigError);
  EXPECT_THROW(parse_tau("fixed:abc"), ConfigError);
  EXPECT_THROW(parse_tau("mean"), ConfigError);
  WeightConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.gamma = 1.3;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.gamma = 1.0;
  cfg.dropout_p = 1.5;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.dropout_p = 0.3;
  cfg.lambda = -0.1;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Signals, ParseAndRender) {
  auto signals = parse_signals(
      R"({"pair_id":"a","incongruence_flag":0})"
      "\n"
      R"({"pair_id":"b","incongruence_flag":1})"
      "\n");
  ASSERT_EQ(signals.size(), 2u);
  WeightConfig cfg;
  cfg.scheme = Scheme::Binary;
  EXPECT_EQ(weights_jsonl(signals, cfg, 32),
            "{\"pair_id\":\"a\",\"s\":0.0,\"w\":1.0}\n"
            "{\"pair_id\":\"b\",\"s\":1.0,\"w\":2.0}\n");
}

TEST(Signals, MalformedLine) {
  EXPECT_THROW(parse_signals("{\"pair_id\":\"a\",\"vad_visual\":[1,2]}\n"), ParseError);
  EXPECT_THROW(parse_signals("[1]\n"), ParseError);
}

TEST(Signals, FixtureLoads) {
  auto signals = load_signals(ether::testing::fixture("signals.jsonl"));
  ASSERT_EQ(signals.size(), 12u);
  for (const auto& s : signals) EXPECT_TRUE(check_signals(s).empty()) << s.pair_id;
}

}  // namespace
}  // namespace ether::incongruence
