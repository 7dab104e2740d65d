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

// Batch commands behind the `ether` executable. Kept in the library so the
// commands can be driven in-process.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ether/incongruence.h"

namespace ether::cli {

enum class Command { Validate, Stats, Weights, Plan, Mask, Score, Compare, Agreement };

std::string_view to_string(Command command);
std::optional<Command> parse_command(std::string_view name);

enum ExitCode : int {
  kOk = 0,
  kValidationFailure = 1,
  kConfigError = 2,
  kIoError = 3,
  kAlignmentError = 4,
};

struct RunConfig {
  std::filesystem::path corpus;
  std::filesystem::path signals;
  std::vector<std::pair<std::string, std::filesystem::path>> responses;
  std::filesystem::path vectors;
  std::filesystem::path lexicons;
  std::filesystem::path reference;  // second annotation set for `agreement`
  incongruence::WeightConfig weights;
  std::optional<std::uint64_t> seed;
  std::size_t batch_size = 32;
  bool strict = true;
  std::string baseline;  // defaults to the first responses entry
  std::filesystem::path output_dir = "out";
};

// Applies the flat keys of a JSON config file onto `config`. Unknown keys
// are a ConfigError.
void apply_config_json(RunConfig& config, std::string_view json_text, const std::string& origin);

// Parses "name=path".
std::pair<std::string, std::filesystem::path> parse_named_path(std::string_view spec);

// Canonical JSON of everything that affects the command's output; its hash
// goes into the run manifest.
std::string canonical_config(Command command, const RunConfig& config);

// Runs one command, writing artifacts under config.output_dir plus a
// manifest.json. Human-readable progress goes to `out`, errors to `err`.
// Never throws; returns an ExitCode.
int run(Command command, const RunConfig& config, std::ostream& out, std::ostream& err);

std::string_view toolkit_version();

}  // namespace ether::cli
