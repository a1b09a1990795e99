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

#include <cstdint>
#include <string>
#include <string_view>

#include "hatemask/common.hpp"

namespace hatemask::text {

// NFC-normalizes, lowercases, splits on whitespace and strips edge
// punctuation. A token whose core is "***" survives as "***"; tokens that
// are empty after stripping are dropped.
Tokens Tokenize(std::string_view text);

// NFC + lowercase only, no splitting.
std::string NormalizeLower(std::string_view text);

// Splits on ASCII/Unicode whitespace without any other processing.
Tokens SplitWhitespace(std::string_view text);

std::string Join(const Tokens& tokens, std::string_view sep = " ");

// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view data);

// Replaces each non-mask token by an 8-hex-digit hash, for logging.
std::string Redact(const Tokens& tokens);

}  // namespace hatemask::text
