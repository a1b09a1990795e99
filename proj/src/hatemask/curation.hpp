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
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hatemask/common.hpp"
#include "hatemask/corpus.hpp"

namespace hatemask::curation {

inline constexpr std::size_t kEnsembleSize = 5;

enum class ClassifierLabel { kHateful, kNormal };

// Maps raw classifier output strings (lowercased) to the binary label.
// "offensive" counts as Hateful by default.
class LabelMap {
 public:
  LabelMap();
  explicit LabelMap(std::map<std::string, ClassifierLabel> table) : table_(std::move(table)) {}

  ClassifierLabel Map(std::string_view raw) const;
  void Set(std::string raw, ClassifierLabel label);
  const std::map<std::string, ClassifierLabel>& table() const { return table_; }

 private:
  std::map<std::string, ClassifierLabel> table_;
};

struct EnsembleVerdict {
  std::array<std::string, kEnsembleSize> model_ids;
  std::array<ClassifierLabel, kEnsembleSize> labels{};

  // Throws ValidationError unless there are exactly five distinct model ids.
  static EnsembleVerdict Make(std::span<const std::string> model_ids,
                              std::span<const ClassifierLabel> labels);
  // Uses "m1".."m5" as model ids.
  static EnsembleVerdict FromLabels(std::span<const ClassifierLabel> labels);

  friend bool operator==(const EnsembleVerdict&, const EnsembleVerdict&) = default;
};

int AssignHateLevel(const EnsembleVerdict& verdict);

struct CandidateRecord {
  std::string id;
  Tokens tokens;
  std::string mandatory_keyword;
  EnsembleVerdict verdict;
  int hate_level = 0;
  std::optional<std::vector<double>> attribution_scores;
  std::optional<std::string> target;
};

void Validate(const CandidateRecord& candidate);

struct TermCount {
  std::string term;
  std::size_t count = 0;

  friend bool operator==(const TermCount&, const TermCount&) = default;
};

using StopList = std::unordered_set<std::string>;

// One term per line, '#' comments.
StopList ParseStopList(std::istream& in);

// Terms with frequency >= min_count, sorted by count desc then term asc.
// The mask token and stop-list terms are never emitted.
std::vector<TermCount> ExtractFrequentTerms(std::span<const corpus::UtteranceRecord> records,
                                            int min_count, const StopList& stop_list = {});

using VerdictTable = std::unordered_map<std::string, EnsembleVerdict>;

// Terms whose Hateful count reaches vote_threshold, input order kept.
// Throws ValidationError naming the first term without a verdict.
std::vector<std::string> SelectKeywords(std::span<const std::string> terms,
                                        const VerdictTable& verdicts, int vote_threshold = 3);

std::vector<CandidateRecord> FilterCandidates(std::span<const CandidateRecord> candidates,
                                              int min_level);

// Token i masked iff scores[i] > threshold.
corpus::MaskedSentence MaskByAttribution(const Tokens& tokens, std::span<const double> scores,
                                         double threshold = 0.1,
                                         std::string origin_id = {});

// ---- ingestion -------------------------------------------------------------

struct VerdictFile {
  VerdictTable verdicts;
  std::vector<std::string> keys;  // file order
  std::vector<corpus::RecordError> errors;
};

// Lines {"key", "model_ids": [5], "labels": [5]}. Duplicate keys are errors.
VerdictFile ParseVerdicts(std::istream& in, const LabelMap& labels = {});

struct CandidateWarning {
  std::string id;
  std::string keyword;
  Tokens tokens;
};

struct CandidateFile {
  std::vector<CandidateRecord> candidates;
  std::vector<corpus::RecordError> errors;
  // Candidates whose text lacks their mandatory keyword.
  std::vector<CandidateWarning> warnings;
};

// Lines {"id", "text"|"tokens", "keyword", "target"?, "model_ids"?,
// "labels"?, "hate_level"?, "attributions"?}. A candidate without inline
// labels takes its verdict from `verdicts` (keyed by candidate id).
CandidateFile ParseCandidates(std::istream& in, const VerdictTable* verdicts = nullptr,
                              const LabelMap& labels = {});

std::string Serialize(const CandidateRecord& candidate);

// Lines {"id", "scores": [...]}.
std::unordered_map<std::string, std::vector<double>> ParseAttributions(std::istream& in);

// ---- curriculum ------------------------------------------------------------

struct PlanStage {
  std::set<int> levels;
  std::size_t count = 0;
};

struct CurriculumPlan {
  std::string name;
  std::vector<PlanStage> stages;
};

// curriculum-2, mixed-2, curriculum-3, mixed-3.
CurriculumPlan BuiltinPlan(std::string_view name);
std::vector<std::string> BuiltinPlanNames();

// {"<name>": {"stages": [{"levels": [..], "count": n}, ...]}, ...}
std::vector<CurriculumPlan> ParsePlans(std::string_view json_text);

enum class MixedSampling { kUniformUnion, kBalancedLevels };

struct ManifestStage {
  std::set<int> level_set;
  std::vector<std::string> sample_ids;

  friend bool operator==(const ManifestStage&, const ManifestStage&) = default;
};

struct CurriculumManifest {
  std::string plan_name;
  std::vector<ManifestStage> stages;
  std::uint64_t seed = 0;

  friend bool operator==(const CurriculumManifest&, const CurriculumManifest&) = default;
};

// Fills stages in plan order by seeded sampling without replacement. Ids
// drawn by one stage are unavailable to later stages. Throws
// ValidationError on a shortfall.
CurriculumManifest BuildCurriculum(std::span<const CandidateRecord> candidates,
                                   const CurriculumPlan& plan, std::uint64_t seed,
                                   MixedSampling sampling = MixedSampling::kUniformUnion);

// Stable field order: plan_name, seed, stages[{levels, sample_ids}].
std::string ManifestToJson(const CurriculumManifest& manifest);

}  // namespace hatemask::curation
