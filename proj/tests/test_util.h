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

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "ether/corpus.h"

namespace ether::testing {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(ETHER_FIXTURES) / name;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("ether_" + tag + "_" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline corpus::DialoguePair valid_pair(const std::string& id, const std::string& session = "s1",
                                       std::int64_t turn = 0) {
  corpus::DialoguePair p;
  p.pair_id = id;
  p.session_id = session;
  p.client = {corpus::Speaker::Client, "I have been tired lately.", turn, 1000};
  p.counsellor = {corpus::Speaker::Counsellor, "Tired, lately.", turn + 1, std::nullopt};
  p.frame_ref = "frames/" + id + ".png";
  p.annotations.vad = corpus::VadAnnotation{0.4, 0.5, 0.6};
  p.annotations.incongruence = corpus::IncongruenceKind::None;
  p.annotations.engagement = 0.5;
  return p;
}

}  // namespace ether::testing
