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

// File and formatting helpers shared by the loaders and report writers.

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

#include "json.hpp"

namespace ether::io {

std::string read_file(const std::filesystem::path& path);
// Creates parent directories as needed.
void write_file(const std::filesystem::path& path, std::string_view content);

// Throws ParseError mentioning `origin` on malformed input.
nlohmann::json parse_json(std::string_view text, const std::string& origin);

// Calls `fn(line, line_no)` for each non-blank line; line numbers are 1-based
// and count blank lines too.
void for_each_line(std::string_view text,
                   const std::function<void(std::string_view, std::size_t)>& fn);

// Rounds half away from zero to `decimals` places. Centralized so every
// display table rounds the same way.
double round_display(double x, int decimals);

// Fixed notation after round_display(); never prints "-0.0".
std::string format_fixed(double x, int decimals);

// Compact human-readable number for messages ("%g").
std::string format_number(double x);

// FNV-1a 64-bit; stable across platforms.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace ether::io
