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

#include "hatemask/curation.hpp"

#include <algorithm>
#include <cctype>
#include "json.hpp"

#include "hatemask/io.hpp"
#include "hatemask/rng.hpp"
#include "hatemask/text.hpp"

namespace hatemask::curation {

using json = nlohmann::ordered_json;

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string LevelsToString(const std::set<int>& levels) {
  std::string out = "{";
  for (int l : levels) {
    if (out.size() > 1) out += ",";
    out += std::to_string(l);
  }
  return out + "}";
}

EnsembleVerdict VerdictFromJson(const json& obj, const LabelMap& labels) {
  auto ids = obj.find("model_ids");
  auto raw = obj.find("labels");
  if (raw == obj.end()) throw ValidationError("missing field 'labels'");
  if (!raw->is_array() || raw->size() != kEnsembleSize) {
    throw ValidationError("expected exactly 5 classifier labels");
  }
  std::vector<ClassifierLabel> mapped;
  for (const auto& l : *raw) mapped.push_back(labels.Map(l.get<std::string>()));
  if (ids == obj.end() || ids->is_null()) return EnsembleVerdict::FromLabels(mapped);
  if (!ids->is_array()) throw ValidationError("'model_ids' must be an array");
  auto model_ids = ids->get<std::vector<std::string>>();
  return EnsembleVerdict::Make(model_ids, mapped);
}

Tokens TokensFromJson(const json& obj) {
  auto tok = obj.find("tokens");
  if (tok != obj.end() && !tok->is_null()) {
    Tokens out;
    for (const auto& t : *tok) {
      std::string normalized = text::NormalizeLower(t.get<std::string>());
      if (normalized.empty()) throw ValidationError("empty token");
      out.push_back(std::move(normalized));
    }
    return out;
  }
  auto txt = obj.find("text");
  if (txt != obj.end() && txt->is_string()) return text::Tokenize(txt->get<std::string>());
  throw ValidationError("record needs 'tokens' or 'text'");
}

std::string IdFromJson(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end()) throw ValidationError(std::string("missing field '") + field + "'");
  std::string id = it->is_string() ? it->get<std::string>() : it->dump();
  if (id.empty()) throw ValidationError("empty id");
  return id;
}

json ParseObject(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ValidationError("record is not a JSON object");
  return obj;
}

bool ContainsKeyword(const Tokens& tokens, const std::string& keyword) {
  Tokens kw = text::Tokenize(keyword);
  if (kw.empty()) return false;
  return std::search(tokens.begin(), tokens.end(), kw.begin(), kw.end()) != tokens.end();
}

}  // namespace

LabelMap::LabelMap() {
  for (const char* h : {"hateful", "hate", "hatespeech", "hate_speech", "hate-speech",
                        "offensive", "toxic", "abusive"}) {
    table_[h] = ClassifierLabel::kHateful;
  }
  for (const char* n : {"normal", "non-hate", "non_hate", "nothate", "not_hate", "neutral",
                        "non-toxic", "non_toxic"}) {
    table_[n] = ClassifierLabel::kNormal;
  }
}

ClassifierLabel LabelMap::Map(std::string_view raw) const {
  auto it = table_.find(Lower(raw));
  if (it == table_.end()) {
    throw ValidationError("classifier label '" + std::string(raw) + "' has no mapping");
  }
  return it->second;
}

void LabelMap::Set(std::string raw, ClassifierLabel label) { table_[Lower(raw)] = label; }

EnsembleVerdict EnsembleVerdict::Make(std::span<const std::string> model_ids,
                                      std::span<const ClassifierLabel> labels) {
  if (model_ids.size() != kEnsembleSize || labels.size() != kEnsembleSize) {
    throw ValidationError("an ensemble verdict needs exactly 5 models and 5 labels");
  }
  EnsembleVerdict v;
  for (std::size_t i = 0; i < kEnsembleSize; ++i) {
    if (model_ids[i].empty()) throw ValidationError("empty model id");
    for (std::size_t j = 0; j < i; ++j) {
      if (model_ids[i] == model_ids[j]) {
        throw ValidationError("duplicate model id '" + model_ids[i] + "'");
      }
    }
    v.model_ids[i] = model_ids[i];
    v.labels[i] = labels[i];
  }
  return v;
}

EnsembleVerdict EnsembleVerdict::FromLabels(std::span<const ClassifierLabel> labels) {
  const std::vector<std::string> ids = {"m1", "m2", "m3", "m4", "m5"};
  return Make(ids, labels);
}

int AssignHateLevel(const EnsembleVerdict& verdict) {
  return static_cast<int>(std::count(verdict.labels.begin(), verdict.labels.end(),
                                     ClassifierLabel::kHateful));
}

void Validate(const CandidateRecord& c) {
  if (c.id.empty()) throw ValidationError("candidate with empty id");
  if (c.hate_level != AssignHateLevel(c.verdict)) {
    throw ValidationError("candidate " + c.id + ": hate level " + std::to_string(c.hate_level) +
                          " disagrees with " + std::to_string(AssignHateLevel(c.verdict)) +
                          " Hateful votes");
  }
  if (c.attribution_scores && c.attribution_scores->size() != c.tokens.size()) {
    throw ValidationError("candidate " + c.id + ": " +
                          std::to_string(c.attribution_scores->size()) +
                          " attribution scores for " + std::to_string(c.tokens.size()) +
                          " tokens");
  }
}

StopList ParseStopList(std::istream& in) {
  StopList out;
  io::ForEachLine(in, [&](std::size_t, std::string_view line) {
    auto start = line.find_first_not_of(" \t");
    if (start == std::string_view::npos || line[start] == '#') return;
    auto end = line.find_last_not_of(" \t");
    out.insert(text::NormalizeLower(line.substr(start, end - start + 1)));
  });
  return out;
}

std::vector<TermCount> ExtractFrequentTerms(std::span<const corpus::UtteranceRecord> records,
                                            int min_count, const StopList& stop_list) {
  if (min_count < 1) throw ValidationError("min_count must be >= 1");
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto& r : records) {
    for (const auto& t : r.tokens) {
      if (IsMask(t) || stop_list.contains(t)) continue;
      ++counts[t];
    }
  }
  std::vector<TermCount> out;
  for (auto& [term, count] : counts) {
    if (count >= static_cast<std::size_t>(min_count)) out.push_back({term, count});
  }
  std::sort(out.begin(), out.end(), [](const TermCount& a, const TermCount& b) {
    return a.count != b.count ? a.count > b.count : a.term < b.term;
  });
  return out;
}

std::vector<std::string> SelectKeywords(std::span<const std::string> terms,
                                        const VerdictTable& verdicts, int vote_threshold) {
  std::vector<std::string> out;
  for (const auto& term : terms) {
    auto it = verdicts.find(term);
    if (it == verdicts.end()) throw ValidationError("no verdict for term '" + term + "'");
    if (AssignHateLevel(it->second) >= vote_threshold) out.push_back(term);
  }
  return out;
}

std::vector<CandidateRecord> FilterCandidates(std::span<const CandidateRecord> candidates,
                                              int min_level) {
  if (min_level < 0 || min_level > 5) {
    throw ValidationError("min level " + std::to_string(min_level) + " outside [0, 5]");
  }
  std::vector<CandidateRecord> out;
  for (const auto& c : candidates) {
    if (c.hate_level >= min_level) out.push_back(c);
  }
  return out;
}

corpus::MaskedSentence MaskByAttribution(const Tokens& tokens, std::span<const double> scores,
                                         double threshold, std::string origin_id) {
  if (scores.size() != tokens.size()) {
    throw ValidationError(std::to_string(scores.size()) + " attribution scores for " +
                          std::to_string(tokens.size()) + " tokens");
  }
  corpus::MaskedSentence m;
  m.origin_id = std::move(origin_id);
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (scores[i] > threshold || IsMask(tokens[i])) {
      m.tokens.emplace_back(kMaskToken);
      m.mask_positions.push_back(i);
    } else {
      m.tokens.push_back(tokens[i]);
    }
  }
  return m;
}

VerdictFile ParseVerdicts(std::istream& in, const LabelMap& labels) {
  VerdictFile out;
  io::ForEachLine(in, [&](std::size_t number, std::string_view line) {
    if (io::IsBlank(line)) return;
    try {
      json obj = ParseObject(line);
      std::string key = IdFromJson(obj, "key");
      EnsembleVerdict v = VerdictFromJson(obj, labels);
      if (!out.verdicts.emplace(key, std::move(v)).second) {
        throw ValidationError("duplicate key '" + key + "'");
      }
      out.keys.push_back(std::move(key));
    } catch (const ValidationError& e) {
      out.errors.push_back({number, e.what()});
    } catch (const json::exception& e) {
      out.errors.push_back({number, std::string("wrong field type: ") + e.what()});
    }
  });
  return out;
}

CandidateFile ParseCandidates(std::istream& in, const VerdictTable* verdicts,
                              const LabelMap& labels) {
  CandidateFile out;
  std::unordered_set<std::string> seen;
  io::ForEachLine(in, [&](std::size_t number, std::string_view line) {
    if (io::IsBlank(line)) return;
    try {
      json obj = ParseObject(line);
      CandidateRecord c;
      c.id = IdFromJson(obj, "id");
      c.tokens = TokensFromJson(obj);
      auto kw = obj.find("keyword");
      if (kw == obj.end() || !kw->is_string() || kw->get<std::string>().empty()) {
        throw ValidationError("missing field 'keyword'");
      }
      c.mandatory_keyword = kw->get<std::string>();
      if (obj.contains("labels")) {
        c.verdict = VerdictFromJson(obj, labels);
      } else if (verdicts) {
        auto it = verdicts->find(c.id);
        if (it == verdicts->end()) throw ValidationError("no verdict for candidate " + c.id);
        c.verdict = it->second;
      } else {
        throw ValidationError("candidate " + c.id + " has no labels and no verdict file was given");
      }
      c.hate_level = AssignHateLevel(c.verdict);
      if (auto lvl = obj.find("hate_level"); lvl != obj.end() && !lvl->is_null()) {
        if (lvl->get<int>() != c.hate_level) {
          throw ValidationError("hate_level " + std::to_string(lvl->get<int>()) +
                                " disagrees with " + std::to_string(c.hate_level) +
                                " Hateful labels");
        }
      }
      if (auto a = obj.find("attributions"); a != obj.end() && !a->is_null()) {
        c.attribution_scores = a->get<std::vector<double>>();
      }
      if (auto t = obj.find("target"); t != obj.end() && !t->is_null()) {
        c.target = t->get<std::string>();
      }
      Validate(c);
      if (!seen.insert(c.id).second) throw ValidationError("duplicate id '" + c.id + "'");
      if (!ContainsKeyword(c.tokens, c.mandatory_keyword)) {
        out.warnings.push_back({c.id, c.mandatory_keyword, c.tokens});
      }
      out.candidates.push_back(std::move(c));
    } catch (const ValidationError& e) {
      out.errors.push_back({number, e.what()});
    } catch (const json::exception& e) {
      out.errors.push_back({number, std::string("wrong field type: ") + e.what()});
    }
  });
  return out;
}

std::string Serialize(const CandidateRecord& c) {
  json obj;
  obj["id"] = c.id;
  obj["tokens"] = c.tokens;
  obj["keyword"] = c.mandatory_keyword;
  if (c.target) obj["target"] = *c.target;
  obj["model_ids"] = c.verdict.model_ids;
  json labels = json::array();
  for (auto l : c.verdict.labels) labels.push_back(l == ClassifierLabel::kHateful ? "Hateful" : "Normal");
  obj["labels"] = labels;
  obj["hate_level"] = c.hate_level;
  if (c.attribution_scores) obj["attributions"] = *c.attribution_scores;
  return obj.dump();
}

std::unordered_map<std::string, std::vector<double>> ParseAttributions(std::istream& in) {
  std::unordered_map<std::string, std::vector<double>> out;
  io::ForEachLine(in, [&](std::size_t number, std::string_view line) {
    if (io::IsBlank(line)) return;
    try {
      json obj = ParseObject(line);
      std::string id = IdFromJson(obj, "id");
      auto scores = obj.find("scores");
      if (scores == obj.end()) throw ValidationError("missing field 'scores'");
      if (!out.emplace(id, scores->get<std::vector<double>>()).second) {
        throw ValidationError("duplicate id '" + id + "'");
      }
    } catch (const json::exception& e) {
      throw ValidationError("attributions line " + std::to_string(number) + ": " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError("attributions line " + std::to_string(number) + ": " + e.what());
    }
  });
  return out;
}

// ---- curriculum ------------------------------------------------------------

namespace {

void ValidatePlan(const CurriculumPlan& plan) {
  if (plan.stages.empty()) throw ValidationError("plan '" + plan.name + "' has no stages");
  int previous_min = -1;
  for (const auto& stage : plan.stages) {
    if (stage.levels.empty()) throw ValidationError("plan '" + plan.name + "': empty level set");
    for (int l : stage.levels) {
      if (l < 0 || l > 5) {
        throw ValidationError("plan '" + plan.name + "': level " + std::to_string(l) +
                              " outside [0, 5]");
      }
    }
    if (stage.count == 0) throw ValidationError("plan '" + plan.name + "': stage count is 0");
    if (*stage.levels.begin() < previous_min) {
      throw ValidationError("plan '" + plan.name + "': stages must ascend in hate level");
    }
    previous_min = *stage.levels.begin();
  }
}

}  // namespace

CurriculumPlan BuiltinPlan(std::string_view name) {
  const std::string key = Lower(name);
  if (key == "curriculum-2") return {key, {{{4}, 1000}, {{5}, 1000}}};
  if (key == "mixed-2") return {key, {{{4, 5}, 2000}}};
  if (key == "curriculum-3") return {key, {{{3}, 1000}, {{4}, 1000}, {{5}, 1000}}};
  if (key == "mixed-3") return {key, {{{3, 4, 5}, 3000}}};
  throw ValidationError("unknown plan '" + std::string(name) + "'");
}

std::vector<std::string> BuiltinPlanNames() {
  return {"curriculum-2", "mixed-2", "curriculum-3", "mixed-3"};
}

std::vector<CurriculumPlan> ParsePlans(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed plan file: ") + e.what());
  }
  if (!root.is_object()) throw ValidationError("plan file must be a JSON object");
  std::vector<CurriculumPlan> plans;
  try {
    for (const auto& [name, body] : root.items()) {
      CurriculumPlan plan;
      plan.name = name;
      for (const auto& s : body.at("stages")) {
        PlanStage stage;
        for (const auto& l : s.at("levels")) stage.levels.insert(l.get<int>());
        auto count = s.at("count").get<long long>();
        if (count < 0) throw ValidationError("plan '" + name + "': negative count");
        stage.count = static_cast<std::size_t>(count);
        plan.stages.push_back(std::move(stage));
      }
      ValidatePlan(plan);
      plans.push_back(std::move(plan));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed plan file: ") + e.what());
  }
  return plans;
}

CurriculumManifest BuildCurriculum(std::span<const CandidateRecord> candidates,
                                   const CurriculumPlan& plan, std::uint64_t seed,
                                   MixedSampling sampling) {
  ValidatePlan(plan);
  {
    std::unordered_set<std::string> ids;
    for (const auto& c : candidates) {
      if (!ids.insert(c.id).second) throw ValidationError("duplicate candidate id '" + c.id + "'");
    }
  }

  SplitMix64 rng(seed);
  std::vector<bool> used(candidates.size(), false);
  CurriculumManifest manifest{plan.name, {}, seed};

  auto pool_for = [&](const std::set<int>& levels) {
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!used[i] && levels.contains(candidates[i].hate_level)) pool.push_back(i);
    }
    return pool;
  };
  auto shortfall = [&](std::size_t stage, const std::set<int>& levels, std::size_t need,
                       std::size_t have) {
    return ValidationError("plan '" + plan.name + "' stage " + std::to_string(stage + 1) +
                           " (levels " + LevelsToString(levels) + ") needs " +
                           std::to_string(need) + " candidates but only " +
                           std::to_string(have) + " are available (short by " +
                           std::to_string(need - have) + ")");
  };

  for (std::size_t s = 0; s < plan.stages.size(); ++s) {
    const PlanStage& stage = plan.stages[s];
    std::vector<std::size_t> picked;
    if (sampling == MixedSampling::kBalancedLevels && stage.levels.size() > 1) {
      const std::size_t per_level = stage.count / stage.levels.size();
      std::size_t remainder = stage.count % stage.levels.size();
      for (int level : stage.levels) {
        std::size_t need = per_level + (remainder > 0 ? 1 : 0);
        if (remainder > 0) --remainder;
        auto pool = pool_for({level});
        if (pool.size() < need) throw shortfall(s, {level}, need, pool.size());
        rng.SampleFront(pool, need);
        picked.insert(picked.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(need));
      }
      rng.Shuffle(picked);
    } else {
      auto pool = pool_for(stage.levels);
      if (pool.size() < stage.count) throw shortfall(s, stage.levels, stage.count, pool.size());
      rng.SampleFront(pool, stage.count);
      picked.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(stage.count));
    }
    ManifestStage out{stage.levels, {}};
    out.sample_ids.reserve(picked.size());
    for (std::size_t i : picked) {
      used[i] = true;
      out.sample_ids.push_back(candidates[i].id);
    }
    manifest.stages.push_back(std::move(out));
  }
  return manifest;
}

std::string ManifestToJson(const CurriculumManifest& manifest) {
  json root;
  root["plan_name"] = manifest.plan_name;
  root["seed"] = manifest.seed;
  json stages = json::array();
  for (const auto& s : manifest.stages) {
    json stage;
    stage["levels"] = std::vector<int>(s.level_set.begin(), s.level_set.end());
    stage["sample_ids"] = s.sample_ids;
    stages.push_back(std::move(stage));
  }
  root["stages"] = std::move(stages);
  return root.dump(2) + "\n";
}

}  // namespace hatemask::curation
