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

#include "ether/rng.h"

#include "ether/io.h"

namespace ether::rng {

SplitMix64 stream_for(std::uint64_t seed, std::string_view key) {
  // One warm-up round decorrelates seeds that differ in few bits.
  SplitMix64 mix(seed ^ io::fnv1a64(key));
  return SplitMix64(mix.next());
}

}  // namespace ether::rng
