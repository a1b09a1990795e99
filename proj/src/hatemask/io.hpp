// Copyright 2026 The Hatemask Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <istream>
#include <string>
#include <string_view>

namespace hatemask::io {

std::string ReadFile(const std::string& path);

// Writes `content` to `path`, replacing any existing file.
void WriteFile(const std::string& path, std::string_view content);

// Calls `fn(line_number, line)` for every line; line numbers start at 1.
// Trailing '\r' is removed. Throws IoError if the stream goes bad.
void ForEachLine(std::istream& in,
                 const std::function<void(std::size_t, std::string_view)>& fn);

// True for empty or whitespace-only lines.
bool IsBlank(std::string_view line);

}  // namespace hatemask::io
