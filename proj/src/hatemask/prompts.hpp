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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hatemask/corpus.hpp"

namespace hatemask::prompts {

inline constexpr std::size_t kBankSize = 15;

struct GenerationPromptInput {
  std::string example_1;
  std::string example_2;
  std::string keyword;
  std::string shared_target;
};

struct InstructionPrompt {
  int index = 0;  // 1-based position in the bank
  std::string text;

  friend bool operator==(const InstructionPrompt&, const InstructionPrompt&) = default;
};

// The five-step chain-of-thought template with the [Hate Speech 1],
// [Hate Speech 2] and [Keyword] slots filled in. Steps are separated by
// newlines. Throws ValidationError on an empty keyword or example.
std::string RenderGenerationPrompt(const GenerationPromptInput& input);

// Same, against a caller-provided template text.
std::string RenderGenerationPrompt(const GenerationPromptInput& input,
                                   std::string_view template_text);

// The built-in step texts, in order 0..4 (placeholders unfilled).
std::vector<std::string> GenerationSteps();

// Entries separated by blank lines; lines inside one entry are joined with
// a space. Throws ValidationError unless there are exactly 15 distinct
// entries, each containing "***".
std::vector<InstructionPrompt> ParsePromptBank(std::string_view text);

const std::vector<InstructionPrompt>& TrainingPromptBank();

// Seeded uniform choice over `bank`; pure function of its arguments.
InstructionPrompt PickTrainingPrompt(std::uint64_t sample_index, std::uint64_t seed,
                                     std::span<const InstructionPrompt> bank);
InstructionPrompt PickTrainingPrompt(std::uint64_t sample_index, std::uint64_t seed);

const std::string& TestPrompt();

struct ExamplePair {
  std::string target;
  std::string example_1;
  std::string example_2;
  std::string id_1;
  std::string id_2;
};

// Draws two distinct unanimously-hateful records sharing `target`. With an
// empty target, first picks a target among those with at least two such
// records. Throws ValidationError if no pair exists.
ExamplePair PickExamplePair(std::span<const corpus::UtteranceRecord> records,
                            std::string_view target, std::uint64_t seed);

}  // namespace hatemask::prompts
