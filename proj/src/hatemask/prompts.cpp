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

#include "hatemask/prompts.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hatemask/embedded_data.hpp"
#include "hatemask/rng.hpp"
#include "hatemask/text.hpp"

namespace hatemask::prompts {
namespace {

constexpr std::string_view kSlotExample1 = "[Hate Speech 1]";
constexpr std::string_view kSlotExample2 = "[Hate Speech 2]";
constexpr std::string_view kSlotKeyword = "[Keyword]";

std::string_view Trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitLines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = end + 1;
  }
  while (!lines.empty() && Trim(lines.back()).empty()) lines.pop_back();
  return lines;
}

}  // namespace

std::vector<std::string> GenerationSteps() { return SplitLines(embedded::generation_template()); }

std::string RenderGenerationPrompt(const GenerationPromptInput& input) {
  return RenderGenerationPrompt(input, embedded::generation_template());
}

std::string RenderGenerationPrompt(const GenerationPromptInput& input,
                                   std::string_view template_text) {
  if (Trim(input.keyword).empty()) throw ValidationError("empty mandatory keyword");
  if (Trim(input.example_1).empty() || Trim(input.example_2).empty()) {
    throw ValidationError("empty example sentence");
  }
  const std::vector<std::string> steps = SplitLines(template_text);
  const std::pair<std::string_view, const std::string*> slots[] = {
      {kSlotExample1, &input.example_1},
      {kSlotExample2, &input.example_2},
      {kSlotKeyword, &input.keyword},
  };
  std::string out;
  std::map<std::string_view, int> filled;
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const std::string& step = steps[s];
    std::size_t pos = 0;
    while (pos < step.size()) {
      std::size_t best = std::string::npos;
      const std::pair<std::string_view, const std::string*>* which = nullptr;
      for (const auto& slot : slots) {
        auto at = step.find(slot.first, pos);
        if (at < best) {
          best = at;
          which = &slot;
        }
      }
      if (!which) {
        out.append(step, pos);
        break;
      }
      out.append(step, pos, best - pos);
      out += *which->second;
      ++filled[which->first];
      pos = best + which->first.size();
    }
    if (s + 1 < steps.size()) out += '\n';
  }
  for (const auto& slot : slots) {
    if (filled[slot.first] != 1) {
      throw ValidationError("generation template must contain " + std::string(slot.first) +
                            " exactly once");
    }
  }
  return out;
}

std::vector<InstructionPrompt> ParsePromptBank(std::string_view text) {
  std::vector<InstructionPrompt> bank;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    bank.push_back({static_cast<int>(bank.size()) + 1, current});
    current.clear();
  };
  for (const auto& line : SplitLines(text)) {
    std::string_view trimmed = Trim(line);
    if (trimmed.empty()) {
      flush();
      continue;
    }
    if (!current.empty()) current += ' ';
    current += trimmed;
  }
  flush();

  if (bank.size() != kBankSize) {
    throw ValidationError("prompt bank has " + std::to_string(bank.size()) + " entries, expected " +
                          std::to_string(kBankSize));
  }
  std::set<std::string> distinct;
  for (const auto& p : bank) {
    if (p.text.find(kMaskToken) == std::string::npos) {
      throw ValidationError("prompt " + std::to_string(p.index) + " lacks the mask token");
    }
    if (!distinct.insert(p.text).second) {
      throw ValidationError("prompt " + std::to_string(p.index) + " duplicates an earlier entry");
    }
  }
  return bank;
}

const std::vector<InstructionPrompt>& TrainingPromptBank() {
  static const std::vector<InstructionPrompt> kBank = ParsePromptBank(embedded::training_bank());
  return kBank;
}

InstructionPrompt PickTrainingPrompt(std::uint64_t sample_index, std::uint64_t seed,
                                     std::span<const InstructionPrompt> bank) {
  if (bank.empty()) throw ValidationError("empty prompt bank");
  SplitMix64 rng(SplitMix64::Mix(seed) ^ SplitMix64::Mix(sample_index + 0x9e3779b97f4a7c15ULL));
  return bank[static_cast<std::size_t>(rng.UniformBelow(bank.size()))];
}

InstructionPrompt PickTrainingPrompt(std::uint64_t sample_index, std::uint64_t seed) {
  return PickTrainingPrompt(sample_index, seed, TrainingPromptBank());
}

const std::string& TestPrompt() {
  static const std::string kPrompt(Trim(embedded::test_prompt()));
  return kPrompt;
}

ExamplePair PickExamplePair(std::span<const corpus::UtteranceRecord> records,
                            std::string_view target, std::uint64_t seed) {
  std::map<std::string, std::vector<std::size_t>> by_target;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.target && corpus::IsUnanimousHateful(r)) by_target[*r.target].push_back(i);
  }
  SplitMix64 rng(seed);
  std::string chosen(target);
  if (chosen.empty()) {
    std::vector<std::string> eligible;
    for (const auto& [t, idx] : by_target) {
      if (idx.size() >= 2) eligible.push_back(t);
    }
    if (eligible.empty()) throw ValidationError("no target has two unanimously hateful records");
    chosen = eligible[rng.UniformBelow(eligible.size())];
  }
  auto it = by_target.find(chosen);
  if (it == by_target.end() || it->second.size() < 2) {
    throw ValidationError("target '" + chosen + "' has fewer than two unanimously hateful records");
  }
  std::vector<std::size_t> pool = it->second;
  rng.SampleFront(pool, 2);
  auto sentence = [](const corpus::UtteranceRecord& r) {
    return r.text ? *r.text : text::Join(r.tokens);
  };
  const auto& a = records[pool[0]];
  const auto& b = records[pool[1]];
  return {chosen, sentence(a), sentence(b), a.id, b.id};
}

}  // namespace hatemask::prompts
