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

// Deterministic, platform-independent random streams for epoch plans.
//
// The generator is SplitMix64. A plan derives one independent stream per
// sample from (seed, pair_id), so decisions do not depend on the order in
// which samples or batches are visited. Uniform doubles use the top 53 bits.
// Changing any of this changes published plans: bump kGeneratorName.

#include <cstdint>
#include <string_view>

namespace ether::rng {

inline constexpr std::string_view kGeneratorName = "splitmix64-v1";

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0,1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

// Stream for one sample: seeded from the run seed mixed with a hash of the key.
SplitMix64 stream_for(std::uint64_t seed, std::string_view key);

}  // namespace ether::rng
