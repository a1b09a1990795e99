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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hatemask {

// The literal masking token used in references and hypotheses.
inline constexpr std::string_view kMaskToken = "***";

using Tokens = std::vector<std::string>;

// Base of every error raised by the core library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violated a documented contract (schema, range, shape).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A file or stream could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

inline bool IsMask(std::string_view token) { return token == kMaskToken; }

}  // namespace hatemask
