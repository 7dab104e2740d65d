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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "ether/error.h"
#include "ether/io.h"
#include "ether/text.h"

namespace ether::embeddings {

VectorStore::VectorStore(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw InvalidArgument("vector dimension must be positive");
}

bool VectorStore::insert(std::string token, std::span<const double> raw) {
  if (raw.size() != dimension_)
    throw InvalidArgument("vector for '" + token + "' has dimension " +
                          std::to_string(raw.size()) + ", expected " +
                          std::to_string(dimension_));
  const double n = norm(raw);
  if (!(n > 0.0) || !std::isfinite(n))
    throw InvalidArgument("vector for '" + token + "' has zero or non-finite norm");
  if (table_.count(token)) return false;
  Vector v(raw.begin(), raw.end());
  for (auto& x : v) x /= n;
  table_.emplace(std::move(token), std::move(v));
  return true;
}

const Vector* VectorStore::find(std::string_view token) const {
  auto it = table_.find(std::string(token));
  return it == table_.end() ? nullptr : &it->second;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

VectorStore parse_vectors(std::string_view text, std::optional<std::size_t> expected_dim) {
  std::optional<VectorStore> store;
  std::vector<double> values;
  io::for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    auto fields = split_ws(line);
    const std::size_t d = fields.size() - 1;
    if (d == 0) throw ParseError("token without vector components", line_no);
    if (!store) {
      if (expected_dim && *expected_dim != d)
        throw ParseError("dimension mismatch: got " + std::to_string(d) + ", expected " +
                             std::to_string(*expected_dim),
                         line_no);
      store.emplace(d);
    } else if (d != store->dimension()) {
      throw ParseError("dimension mismatch: got " + std::to_string(d) + ", expected " +
                           std::to_string(store->dimension()),
                       line_no);
    }
    values.assign(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
      std::string field(fields[k + 1]);
      char* end = nullptr;
      values[k] = std::strtod(field.c_str(), &end);
      if (end != field.c_str() + field.size())
        throw ParseError("bad number '" + field + "'", line_no);
    }
    try {
      store->insert(std::string(fields[0]), values);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line_no);
    }
  });
  if (!store) throw ParseError("empty vector file", 0);
  return std::move(*store);
}

VectorStore load_vectors(const std::filesystem::path& path,
                         std::optional<std::size_t> expected_dim) {
  const std::string text = io::read_file(path);
  try {
    return parse_vectors(text, expected_dim);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

PooledEmbedding embed_tokens(std::span<const std::string> tokens, const VectorStore& store) {
  PooledEmbedding out{Vector(store.dimension(), 0.0), 0.0};
  std::size_t found = 0;
  for (const auto& t : tokens) {
    if (const Vector* v = store.find(t)) {
      for (std::size_t k = 0; k < v->size(); ++k) out.vector[k] += (*v)[k];
      ++found;
    }
  }
  if (found == 0) return out;
  const double n = norm(out.vector);
  if (!(n > 0.0)) {
    std::fill(out.vector.begin(), out.vector.end(), 0.0);
    return out;
  }
  // Dividing the sum by its norm equals normalizing the mean.
  for (auto& x : out.vector) x /= n;
  out.coverage = static_cast<double>(found) / static_cast<double>(tokens.size());
  return out;
}

PooledEmbedding embed_text(std::string_view text, const VectorStore& store) {
  const auto tokens = text::tokenize(text);
  return embed_tokens(tokens, store);
}

double dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * v[k];
  return s;
}

double norm(std::span<const double> u) { return std::sqrt(dot(u, u)); }

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw InvalidArgument("cosine: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                          std::to_string(v.size()) + ")");
  const double nu = norm(u);
  const double nv = norm(v);
  if (nu == 0.0 || nv == 0.0) return 0.0;
  const double c = dot(u, v) / (nu * nv);
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace ether::embeddings
