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

// Static word vectors: loading, mean-pooled text embeddings and cosine
// similarity.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ether::embeddings {

using Vector = std::vector<double>;

// Immutable after construction. Every stored vector is unit length.
class VectorStore {
 public:
  explicit VectorStore(std::size_t dimension);

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return table_.size(); }

  // Normalizes `raw`. Returns false (and stores nothing) if the token is
  // already present. Throws InvalidArgument on wrong length or zero norm.
  bool insert(std::string token, std::span<const double> raw);

  // nullptr when the token is out of vocabulary.
  const Vector* find(std::string_view token) const;

 private:
  std::size_t dimension_;
  std::unordered_map<std::string, Vector> table_;
};

// Text format: `token v1 ... vd` per line, d taken from the first line.
// Duplicate tokens keep their first vector.
VectorStore load_vectors(const std::filesystem::path& path,
                         std::optional<std::size_t> expected_dim = std::nullopt);
VectorStore parse_vectors(std::string_view text,
                          std::optional<std::size_t> expected_dim = std::nullopt);

struct PooledEmbedding {
  Vector vector;
  double coverage = 0.0;  // found tokens / total tokens
};

// Mean of the in-vocabulary token vectors, renormalized. Zero vector with
// coverage 0 when nothing is found (or when the found vectors cancel).
PooledEmbedding embed_text(std::string_view text, const VectorStore& store);
PooledEmbedding embed_tokens(std::span<const std::string> tokens, const VectorStore& store);

double dot(std::span<const double> u, std::span<const double> v);
double norm(std::span<const double> u);

// <u,v>/(|u||v|), 0 when either norm is 0. Throws InvalidArgument on a
// dimension mismatch.
double cosine(std::span<const double> u, std::span<const double> v);

}  // namespace ether::embeddings
