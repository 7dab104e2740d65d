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

#include "ether/embeddings.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ether/error.h"
#include "test_util.h"

namespace ether::embeddings {
namespace {

using ether::testing::fixture;

TEST(ParseVectors, TwoTokensUnitNorm) {
  auto store = parse_vectors("a 1 2 2\nb 0 0 5\n");
  EXPECT_EQ(store.dimension(), 3u);
  EXPECT_EQ(store.size(), 2u);
  EXPECT_NEAR(norm(*store.find("a")), 1.0, 1e-15);
  EXPECT_NEAR(norm(*store.find("b")), 1.0, 1e-15);
}

TEST(ParseVectors, StoredVectorIsNormalized) {
  auto store = parse_vectors("sad 3 4 0\n");
  const Vector* v = store.find("sad");
  ASSERT_NE(v, nullptr);
  EXPECT_DOUBLE_EQ((*v)[0], 0.6);
  EXPECT_DOUBLE_EQ((*v)[1], 0.8);
  EXPECT_DOUBLE_EQ((*v)[2], 0.0);
}

TEST(ParseVectors, DimensionMismatchNamesLine) {
  try {
    parse_vectors("a 1 0 0\nb 1 0 0 0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ParseVectors, ExpectedDimensionEnforced) {
  EXPECT_THROW(parse_vectors("a 1 0 0\n", 4), ParseError);
  EXPECT_EQ(parse_vectors("a 1 0 0 0\n", 4).dimension(), 4u);
}

TEST(ParseVectors, EmptyFileRejected) {
  EXPECT_THROW(parse_vectors(""), ParseError);
  EXPECT_THROW(parse_vectors("\n\n"), ParseError);
}

TEST(ParseVectors, ZeroVectorRejected) {
  EXPECT_THROW(parse_vectors("a 0 0 0\n"), Error);
}

TEST(ParseVectors, NonNumericRejected) {
  EXPECT_THROW(parse_vectors("a 1 x 0\n"), ParseError);
}

TEST(ParseVectors, DuplicateKeepsFirst) {
  auto store = parse_vectors("a 1 0\na 0 1\n");
  EXPECT_EQ(store.size(), 1u);
  EXPECT_DOUBLE_EQ((*store.find("a"))[0], 1.0);
}

TEST(LoadVectors, Fixture) {
  auto store = load_vectors(fixture("vectors.txt"));
  EXPECT_EQ(store.dimension(), 8u);
  EXPECT_GT(store.size(), 100u);
}

TEST(EmbedText, SingleTokenIsItsVector) {
  auto store = parse_vectors("sad 3 4 0\n");
  auto e = embed_text("Sad!", store);
  EXPECT_EQ(e.coverage, 1.0);
  EXPECT_EQ(e.vector, *store.find("sad"));
}

TEST(EmbedText, NoHitsGiveZeroVector) {
  auto store = parse_vectors("sad 3 4 0\n");
  auto e = embed_text("happy days", store);
  EXPECT_EQ(e.coverage, 0.0);
  EXPECT_EQ(e.vector, (Vector{0, 0, 0}));
}

TEST(EmbedText, MeanThenRenormalize) {
  auto store = parse_vectors("x 1 0\ny 0 1\n");
  auto e = embed_text("x y", store);
  EXPECT_EQ(e.coverage, 1.0);
  EXPECT_NEAR(e.vector[0], 0.70710678118654752, 1e-15);
  EXPECT_NEAR(e.vector[1], 0.70710678118654752, 1e-15);
}

TEST(EmbedText, PartialCoverage) {
  auto store = parse_vectors("x 1 0\n");
  EXPECT_DOUBLE_EQ(embed_text("x q r s", store).coverage, 0.25);
}

TEST(EmbedText, CancellingVectorsGiveZero) {
  auto store = parse_vectors("x 1 0\ny -1 0\n");
  auto e = embed_text("x y", store);
  EXPECT_EQ(e.coverage, 0.0);
  EXPECT_EQ(norm(e.vector), 0.0);
}

TEST(EmbedText, PooledNormIsOne) {
  auto store = load_vectors(fixture("vectors.txt"));
  for (const char* s : {"I feel numb", "the move is over", "what do you make of that"}) {
    auto e = embed_text(s, store);
    ASSERT_GT(e.coverage, 0.0);
    EXPECT_NEAR(norm(e.vector), 1.0, 1e-9);
    EXPECT_EQ(e.vector, embed_text(s, store).vector);
  }
}

TEST(Cosine, Examples) {
  Vector u{1, 0}, v{0, 1}, w{1, 1};
  EXPECT_EQ(cosine(u, u), 1.0);
  EXPECT_EQ(cosine(u, v), 0.0);
  EXPECT_NEAR(cosine(w, u), 0.70711, 5e-6);
}

TEST(Cosine, ZeroNormIsZero) {
  Vector z{0, 0}, u{1, 2};
  EXPECT_EQ(cosine(z, u), 0.0);
  EXPECT_EQ(cosine(u, z), 0.0);
}

TEST(Cosine, DimensionMismatchThrows) {
  Vector a{1, 0}, b{1, 0, 0};
  EXPECT_THROW(cosine(a, b), InvalidArgument);
}

TEST(Cosine, SymmetricAndScaleInvariant) {
  std::mt19937_64 gen(17);
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int i = 0; i < 500; ++i) {
    Vector u(5), v(5);
    for (auto& x : u) x = n01(gen);
    for (auto& x : v) x = n01(gen);
    const double c = cosine(u, v);
    EXPECT_EQ(c, cosine(v, u));
    EXPECT_GE(c, -1.0);
    EXPECT_LE(c, 1.0);
    Vector su = u;
    const double a = scale(gen);
    for (auto& x : su) x *= a;
    EXPECT_NEAR(cosine(su, v), c, 1e-12);
  }
}

TEST(VectorStore, InsertContract) {
  VectorStore store(2);
  std::vector<double> a{2, 0};
  EXPECT_TRUE(store.insert("a", a));
  EXPECT_FALSE(store.insert("a", a));
  std::vector<double> wrong{1, 2, 3};
  EXPECT_THROW(store.insert("b", wrong), InvalidArgument);
  EXPECT_EQ(store.find("missing"), nullptr);
}

}  // namespace
}  // namespace ether::embeddings
