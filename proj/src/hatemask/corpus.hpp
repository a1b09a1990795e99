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

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hatemask/common.hpp"

namespace hatemask::corpus {

enum class AnnotatorLabel { kHateful, kOffensive, kNormal, kUndecided };
enum class Source { kOriginal, kGenerated };

// Accepts "hateful"/"hatespeech", "offensive", "normal", "undecided",
// case-insensitively.
AnnotatorLabel ParseAnnotatorLabel(std::string_view name);
std::string_view ToString(AnnotatorLabel label);
std::string_view ToString(Source source);

struct UtteranceRecord {
  std::string id;
  Tokens tokens;
  std::array<AnnotatorLabel, 3> annotator_labels{};
  std::optional<std::string> target;
  // Number of annotators (0..3) highlighting each token.
  std::vector<int> rationale_votes;
  Source source = Source::kOriginal;
  // Pre-tokenization text, when the record was supplied as text.
  std::optional<std::string> text;

  friend bool operator==(const UtteranceRecord&, const UtteranceRecord&) = default;
};

// Throws ValidationError when an invariant is broken.
void Validate(const UtteranceRecord& record);

struct MaskedSentence {
  Tokens tokens;
  std::vector<std::size_t> mask_positions;
  std::string origin_id;

  // Derives mask_positions from the "***" tokens already present.
  static MaskedSentence FromTokens(Tokens tokens, std::string origin_id = {});

  friend bool operator==(const MaskedSentence&, const MaskedSentence&) = default;
};

struct RecordError {
  std::size_t line = 0;
  std::string message;
};

struct ParsedCorpus {
  std::vector<UtteranceRecord> records;
  std::vector<RecordError> errors;
};

// One JSON object per line. Blank lines are skipped. Malformed lines are
// reported in `errors` and parsing continues; stream failures throw IoError.
ParsedCorpus ParseCorpus(std::istream& in);
UtteranceRecord ParseRecord(std::string_view line);

// Inverse of ParseRecord for valid records (tokens form, rationales rebuilt
// from the vote counts).
std::string Serialize(const UtteranceRecord& record);

bool IsUnanimousHateful(const UtteranceRecord& record);

// Token i is masked iff rationale_votes[i] >= vote_threshold. Tokens that
// already are "***" stay masked.
MaskedSentence BuildMaskedReference(const UtteranceRecord& record,
                                    int vote_threshold = 2);

// JSON line for a masked reference: id, text, tokens, mask_positions and
// target when known.
std::string MaskedToJson(const MaskedSentence& masked,
                         const std::optional<std::string>& target = std::nullopt);

// id -> forced decision (true = keep).
using Overrides = std::unordered_map<std::string, bool>;

// Lines "+id" or "-id"; blank lines and '#' comments ignored.
Overrides ParseOverrides(std::istream& in);

// Drops sentences an ASR system could not voice: tokens with characters
// outside [a-z'] or matching an emoticon/URL pattern. Patterns are also
// checked against the raw whitespace pieces of the record text.
class SymbolPrefilter {
 public:
  SymbolPrefilter();  // default patterns
  explicit SymbolPrefilter(std::vector<std::string> patterns, Overrides overrides = {});

  static const std::vector<std::string>& DefaultPatterns();

  // True = keep.
  bool Keep(const UtteranceRecord& record) const;

  const std::vector<std::string>& patterns() const { return pattern_text_; }
  void set_overrides(Overrides overrides) { overrides_ = std::move(overrides); }

 private:
  bool MatchesPattern(std::string_view piece) const;

  std::vector<std::string> pattern_text_;
  std::vector<std::regex> patterns_;
  Overrides overrides_;
};

}  // namespace hatemask::corpus
