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

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hatemask/common.hpp"
#include "hatemask/corpus.hpp"

namespace hatemask::metrics {

using corpus::MaskedSentence;

enum class EditOp { kMatch, kSubstitute, kInsert, kDelete };

std::string_view ToString(EditOp op);

struct AlignedPair {
  EditOp op = EditOp::kMatch;
  std::optional<std::size_t> ref_index;
  std::optional<std::size_t> hyp_index;

  friend bool operator==(const AlignedPair&, const AlignedPair&) = default;
};

struct EditCounts {
  std::size_t insertions = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;

  std::size_t errors() const { return insertions + substitutions + deletions; }
  friend bool operator==(const EditCounts&, const EditCounts&) = default;
};

struct Alignment {
  std::vector<AlignedPair> ops;  // in sequence order
  EditCounts counts;
};

// Minimum-cost word alignment (unit substitute/insert/delete cost). Among
// optimal alignments the backtrace from the end prefers match/substitute,
// then delete, then insert, so the op sequence is fully determined.
Alignment Align(std::span<const std::string> ref, std::span<const std::string> hyp);

// Same tokenizer as corpus ingestion.
Tokens Tokenize(std::string_view text);

// Reference from already-masked text ("***" marks masked positions).
MaskedSentence ReferenceFromText(std::string_view text, std::string id = {});

// Percentage of reference mask positions aligned as a match to a hypothesis
// "***". Absent when the reference has no masks.
std::optional<double> Mar(const MaskedSentence& ref, std::span<const std::string> hyp);

// 100 (I+S+D)/N against the masked reference. Throws on an empty reference.
double Wer(const MaskedSentence& ref, std::span<const std::string> hyp);

// WER after removing "***" from both sides, over the non-mask reference
// words. Throws when the reference is all masks (or empty).
double Umwer(const MaskedSentence& ref, std::span<const std::string> hyp);

struct ErrorCounts {
  std::size_t insertions = 0;
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t reference_words = 0;

  std::size_t errors() const { return insertions + substitutions + deletions; }
  ErrorCounts& operator+=(const ErrorCounts& o);
  friend bool operator==(const ErrorCounts&, const ErrorCounts&) = default;
};

struct EvalResult {
  std::optional<double> mar;
  double wer = 0.0;
  std::optional<double> umwer;  // absent when the reference is all masks
  ErrorCounts full;             // I, S, D, N
  ErrorCounts unmasked;         // Î, Ŝ, D̂, N̂
  std::size_t masks_total = 0;
  std::size_t masks_matched = 0;
};

EvalResult Evaluate(const MaskedSentence& ref, std::span<const std::string> hyp);

enum class Aggregation { kMicro, kMacro };

std::optional<Aggregation> ParseAggregation(std::string_view name);
std::string_view ToString(Aggregation aggregation);

struct ScoringPair {
  std::string id;
  MaskedSentence ref;
  Tokens hyp;
};

struct EvalReport {
  std::vector<std::pair<std::string, EvalResult>> per_utterance;
  // Counts are always summed. Rates come from the summed counts (micro) or
  // are unweighted means of the defined per-utterance rates (macro).
  EvalResult pooled;
  Aggregation aggregation = Aggregation::kMicro;
};

EvalReport EvaluateCorpus(std::span<const ScoringPair> pairs,
                          Aggregation aggregation = Aggregation::kMicro);

// Lines {"id", "ref", "hyp"}. Throws ValidationError naming the line.
std::vector<ScoringPair> ParseScoringInput(std::istream& in);

std::string ReportToJson(const EvalReport& report);
std::string ReportToTable(const EvalReport& report);

}  // namespace hatemask::metrics
