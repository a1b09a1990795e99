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

#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "hatemask.h"
#include "hatemask/corpus.hpp"
#include "hatemask/curation.hpp"
#include "hatemask/embedded_data.hpp"
#include "hatemask/io.hpp"
#include "hatemask/metrics.hpp"
#include "hatemask/objectives.hpp"
#include "hatemask/prompts.hpp"
#include "hatemask/text.hpp"

using namespace hatemask;

struct hm_strings {
  std::vector<std::string> items;
};

struct hm_corpus {
  corpus::ParsedCorpus parsed;
};

struct hm_terms {
  std::vector<curation::TermCount> terms;
};

struct hm_label_map {
  curation::LabelMap map;
};

struct hm_verdicts {
  curation::VerdictFile file;
};

struct hm_candidates {
  std::vector<curation::CandidateRecord> records;
  std::vector<corpus::RecordError> errors;
  std::vector<curation::CandidateWarning> warnings;
  std::vector<std::string> warning_text;
};

struct hm_plan {
  curation::CurriculumPlan plan;
};

struct hm_manifest {
  curation::CurriculumManifest manifest;
};

struct hm_prompt_bank {
  std::vector<prompts::InstructionPrompt> entries;
};

struct hm_report {
  metrics::EvalReport report;
};

namespace {

thread_local std::string g_last_error;

class ArgumentError : public Error {
 public:
  using Error::Error;
};

template <typename F>
hm_status Guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return HM_OK;
  } catch (const ValidationError& e) {
    g_last_error = e.what();
    return HM_ERR_VALIDATION;
  } catch (const IoError& e) {
    g_last_error = e.what();
    return HM_ERR_IO;
  } catch (const ArgumentError& e) {
    g_last_error = e.what();
    return HM_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return HM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return HM_ERR_INTERNAL;
  }
}

template <typename T>
const T& Need(const T* p, const char* what) {
  if (!p) throw ArgumentError(std::string("null ") + what);
  return *p;
}

template <typename T>
T& Need(T* p, const char* what) {
  if (!p) throw ArgumentError(std::string("null ") + what);
  return *p;
}

std::string Need(const char* p, const char* what) {
  if (!p) throw ArgumentError(std::string("null ") + what);
  return p;
}

void CheckIndex(std::size_t index, std::size_t size) {
  if (index >= size) {
    throw ArgumentError("index " + std::to_string(index) + " out of range (size " +
                        std::to_string(size) + ")");
  }
}

char* CopyString(std::string_view s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

std::ifstream OpenInput(const char* path) {
  Need(path, "path");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(std::string("cannot open '") + path + "' for reading");
  return in;
}

Tokens ToTokens(const char* const* tokens, std::size_t size) {
  if (size > 0 && !tokens) throw ArgumentError("null token array");
  Tokens out;
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) out.emplace_back(Need(tokens[i], "token"));
  return out;
}

void Fill(const metrics::EvalResult& r, hm_eval_result* out) {
  Need(out, "result");
  *out = hm_eval_result{};
  out->has_mar = r.mar.has_value();
  out->mar = r.mar.value_or(0.0);
  out->wer = r.wer;
  out->has_umwer = r.umwer.has_value();
  out->umwer = r.umwer.value_or(0.0);
  out->insertions = r.full.insertions;
  out->substitutions = r.full.substitutions;
  out->deletions = r.full.deletions;
  out->reference_words = r.full.reference_words;
  out->unmasked_insertions = r.unmasked.insertions;
  out->unmasked_substitutions = r.unmasked.substitutions;
  out->unmasked_deletions = r.unmasked.deletions;
  out->unmasked_reference_words = r.unmasked.reference_words;
  out->masks_total = r.masks_total;
  out->masks_matched = r.masks_matched;
}

std::vector<objectives::StepDistribution> ToSteps(const double* data, std::size_t steps,
                                                  std::size_t vocab) {
  if (steps * vocab > 0 && !data) throw ArgumentError("null distribution array");
  std::vector<objectives::StepDistribution> out;
  for (std::size_t t = 0; t < steps; ++t) {
    out.emplace_back(std::vector<double>(data + t * vocab, data + (t + 1) * vocab));
  }
  return out;
}

}  // namespace

extern "C" {

const char* hm_version(void) { return "1.0.0"; }
const char* hm_last_error(void) { return g_last_error.c_str(); }
void hm_string_free(char* s) { std::free(s); }
const char* hm_mask_token(void) { return kMaskToken.data(); }

hm_status hm_redact(const char* text, char** out) {
  return Guard([&] { Need(out, "out") = CopyString(text::Redact(text::Tokenize(Need(text, "text")))); });
}

hm_status hm_tokenize(const char* text, char** out) {
  return Guard([&] { Need(out, "out") = CopyString(text::Join(text::Tokenize(Need(text, "text")))); });
}

// ---- strings -----------------------------------------------------------------

size_t hm_strings_size(const hm_strings* list) { return list ? list->items.size() : 0; }

const char* hm_strings_at(const hm_strings* list, size_t index) {
  if (!list || index >= list->items.size()) return nullptr;
  return list->items[index].c_str();
}

hm_status hm_strings_write(const hm_strings* list, const char* path) {
  return Guard([&] {
    std::string content;
    for (const auto& s : Need(list, "list").items) content += s + "\n";
    io::WriteFile(Need(path, "path"), content);
  });
}

void hm_strings_free(hm_strings* list) { delete list; }

// ---- corpus ------------------------------------------------------------------

hm_status hm_corpus_read(const char* path, hm_corpus** out) {
  return Guard([&] {
    Need(out, "out");
    auto in = OpenInput(path);
    auto c = std::make_unique<hm_corpus>();
    c->parsed = corpus::ParseCorpus(in);
    *out = c.release();
  });
}

hm_status hm_corpus_parse(const char* data, size_t size, hm_corpus** out) {
  return Guard([&] {
    Need(out, "out");
    if (size > 0) Need(data, "data");
    std::istringstream in(std::string(data ? data : "", size));
    auto c = std::make_unique<hm_corpus>();
    c->parsed = corpus::ParseCorpus(in);
    *out = c.release();
  });
}

void hm_corpus_free(hm_corpus* corpus) { delete corpus; }
size_t hm_corpus_size(const hm_corpus* c) { return c ? c->parsed.records.size() : 0; }
size_t hm_corpus_error_count(const hm_corpus* c) { return c ? c->parsed.errors.size() : 0; }

hm_status hm_corpus_error(const hm_corpus* c, size_t index, size_t* line, const char** message) {
  return Guard([&] {
    const auto& errors = Need(c, "corpus").parsed.errors;
    CheckIndex(index, errors.size());
    if (line) *line = errors[index].line;
    if (message) *message = errors[index].message.c_str();
  });
}

hm_status hm_corpus_record_id(const hm_corpus* c, size_t index, const char** id) {
  return Guard([&] {
    const auto& records = Need(c, "corpus").parsed.records;
    CheckIndex(index, records.size());
    Need(id, "id") = records[index].id.c_str();
  });
}

hm_status hm_corpus_is_unanimous_hateful(const hm_corpus* c, size_t index, int* result) {
  return Guard([&] {
    const auto& records = Need(c, "corpus").parsed.records;
    CheckIndex(index, records.size());
    Need(result, "result") = corpus::IsUnanimousHateful(records[index]) ? 1 : 0;
  });
}

void hm_ingest_options_init(hm_ingest_options* options) {
  if (!options) return;
  options->vote_threshold = 2;
  options->overrides_path = nullptr;
  options->patterns_path = nullptr;
}

hm_status hm_corpus_ingest(const hm_corpus* c, const hm_ingest_options* options,
                           const char* out_path, hm_ingest_stats* stats) {
  return Guard([&] {
    const auto& records = Need(c, "corpus").parsed.records;
    hm_ingest_options opts;
    hm_ingest_options_init(&opts);
    if (options) opts = *options;
    Need(out_path, "output path");

    corpus::Overrides overrides;
    if (opts.overrides_path) {
      auto in = OpenInput(opts.overrides_path);
      overrides = corpus::ParseOverrides(in);
    }
    std::vector<std::string> patterns = corpus::SymbolPrefilter::DefaultPatterns();
    if (opts.patterns_path) {
      patterns.clear();
      auto in = OpenInput(opts.patterns_path);
      io::ForEachLine(in, [&](std::size_t, std::string_view line) {
        if (io::IsBlank(line) || line.front() == '#') return;
        patterns.emplace_back(line);
      });
    }
    corpus::SymbolPrefilter prefilter(std::move(patterns), std::move(overrides));

    hm_ingest_stats s{};
    s.records = records.size();
    std::string content;
    for (const auto& r : records) {
      if (!corpus::IsUnanimousHateful(r)) continue;
      ++s.unanimous_hateful;
      if (!prefilter.Keep(r)) {
        ++s.dropped_by_prefilter;
        continue;
      }
      auto masked = corpus::BuildMaskedReference(r, opts.vote_threshold);
      ++s.kept;
      s.masked_tokens += masked.mask_positions.size();
      content += corpus::MaskedToJson(masked, r.target) + "\n";
    }
    io::WriteFile(out_path, content);
    if (stats) *stats = s;
  });
}

// ---- keywords ----------------------------------------------------------------

hm_status hm_frequent_terms(const hm_corpus* c, int min_count, const char* stoplist_path,
                            int hateful_only, hm_terms** out) {
  return Guard([&] {
    Need(out, "out");
    const auto& records = Need(c, "corpus").parsed.records;
    curation::StopList stop;
    if (!stoplist_path) {
      std::istringstream in{std::string(embedded::stoplist())};
      stop = curation::ParseStopList(in);
    } else if (*stoplist_path) {
      auto in = OpenInput(stoplist_path);
      stop = curation::ParseStopList(in);
    }
    std::vector<corpus::UtteranceRecord> selected;
    for (const auto& r : records) {
      if (!hateful_only || corpus::IsUnanimousHateful(r)) selected.push_back(r);
    }
    if (selected.empty()) throw ValidationError("no records to count terms from");
    auto t = std::make_unique<hm_terms>();
    t->terms = curation::ExtractFrequentTerms(selected, min_count, stop);
    *out = t.release();
  });
}

size_t hm_terms_size(const hm_terms* terms) { return terms ? terms->terms.size() : 0; }

hm_status hm_terms_at(const hm_terms* terms, size_t index, const char** term, size_t* count) {
  return Guard([&] {
    const auto& list = Need(terms, "terms").terms;
    CheckIndex(index, list.size());
    if (term) *term = list[index].term.c_str();
    if (count) *count = list[index].count;
  });
}

hm_status hm_terms_write(const hm_terms* terms, const char* path) {
  return Guard([&] {
    std::string content;
    for (const auto& t : Need(terms, "terms").terms) {
      content += t.term + "\t" + std::to_string(t.count) + "\n";
    }
    io::WriteFile(Need(path, "path"), content);
  });
}

void hm_terms_free(hm_terms* terms) { delete terms; }

hm_label_map* hm_label_map_new(void) { return new (std::nothrow) hm_label_map(); }

hm_status hm_label_map_set(hm_label_map* map, const char* raw_label, int hateful) {
  return Guard([&] {
    Need(map, "label map")
        .map.Set(Need(raw_label, "label"),
                 hateful ? curation::ClassifierLabel::kHateful : curation::ClassifierLabel::kNormal);
  });
}

void hm_label_map_free(hm_label_map* map) { delete map; }

hm_status hm_verdicts_read(const char* path, const hm_label_map* labels, hm_verdicts** out) {
  return Guard([&] {
    Need(out, "out");
    auto in = OpenInput(path);
    auto v = std::make_unique<hm_verdicts>();
    v->file = curation::ParseVerdicts(in, labels ? labels->map : curation::LabelMap{});
    *out = v.release();
  });
}

size_t hm_verdicts_size(const hm_verdicts* v) { return v ? v->file.keys.size() : 0; }
size_t hm_verdicts_error_count(const hm_verdicts* v) { return v ? v->file.errors.size() : 0; }

hm_status hm_verdicts_error(const hm_verdicts* v, size_t index, size_t* line,
                            const char** message) {
  return Guard([&] {
    const auto& errors = Need(v, "verdicts").file.errors;
    CheckIndex(index, errors.size());
    if (line) *line = errors[index].line;
    if (message) *message = errors[index].message.c_str();
  });
}

hm_status hm_verdicts_level(const hm_verdicts* v, const char* key, int* level) {
  return Guard([&] {
    const auto& table = Need(v, "verdicts").file.verdicts;
    auto it = table.find(Need(key, "key"));
    if (it == table.end()) throw ValidationError(std::string("no verdict for '") + key + "'");
    Need(level, "level") = curation::AssignHateLevel(it->second);
  });
}

void hm_verdicts_free(hm_verdicts* verdicts) { delete verdicts; }

hm_status hm_select_keywords(const hm_terms* terms, const hm_verdicts* verdicts,
                             int vote_threshold, hm_strings** out) {
  return Guard([&] {
    Need(out, "out");
    std::vector<std::string> names;
    for (const auto& t : Need(terms, "terms").terms) names.push_back(t.term);
    auto s = std::make_unique<hm_strings>();
    s->items = curation::SelectKeywords(names, Need(verdicts, "verdicts").file.verdicts,
                                        vote_threshold);
    *out = s.release();
  });
}

// ---- candidates --------------------------------------------------------------

hm_status hm_candidates_read(const char* path, const hm_verdicts* verdicts,
                             const hm_label_map* labels, hm_candidates** out) {
  return Guard([&] {
    Need(out, "out");
    auto in = OpenInput(path);
    auto file = curation::ParseCandidates(in, verdicts ? &verdicts->file.verdicts : nullptr,
                                          labels ? labels->map : curation::LabelMap{});
    auto c = std::make_unique<hm_candidates>();
    c->records = std::move(file.candidates);
    c->errors = std::move(file.errors);
    c->warnings = std::move(file.warnings);
    for (const auto& w : c->warnings) c->warning_text.push_back(text::Join(w.tokens));
    *out = c.release();
  });
}

void hm_candidates_free(hm_candidates* c) { delete c; }
size_t hm_candidates_size(const hm_candidates* c) { return c ? c->records.size() : 0; }
size_t hm_candidates_error_count(const hm_candidates* c) { return c ? c->errors.size() : 0; }
size_t hm_candidates_warning_count(const hm_candidates* c) { return c ? c->warnings.size() : 0; }

hm_status hm_candidates_error(const hm_candidates* c, size_t index, size_t* line,
                              const char** message) {
  return Guard([&] {
    const auto& errors = Need(c, "candidates").errors;
    CheckIndex(index, errors.size());
    if (line) *line = errors[index].line;
    if (message) *message = errors[index].message.c_str();
  });
}

hm_status hm_candidates_warning(const hm_candidates* c, size_t index, const char** id,
                                const char** keyword, const char** text) {
  return Guard([&] {
    const auto& warnings = Need(c, "candidates").warnings;
    CheckIndex(index, warnings.size());
    if (id) *id = warnings[index].id.c_str();
    if (keyword) *keyword = warnings[index].keyword.c_str();
    if (text) *text = c->warning_text[index].c_str();
  });
}

hm_status hm_candidates_id(const hm_candidates* c, size_t index, const char** id) {
  return Guard([&] {
    const auto& records = Need(c, "candidates").records;
    CheckIndex(index, records.size());
    Need(id, "id") = records[index].id.c_str();
  });
}

hm_status hm_candidates_level(const hm_candidates* c, size_t index, int* level) {
  return Guard([&] {
    const auto& records = Need(c, "candidates").records;
    CheckIndex(index, records.size());
    Need(level, "level") = records[index].hate_level;
  });
}

hm_status hm_candidates_filter(const hm_candidates* c, int min_level, hm_candidates** out) {
  return Guard([&] {
    Need(out, "out");
    auto f = std::make_unique<hm_candidates>();
    f->records = curation::FilterCandidates(Need(c, "candidates").records, min_level);
    *out = f.release();
  });
}

hm_status hm_candidates_write(const hm_candidates* c, const char* path) {
  return Guard([&] {
    std::string content;
    for (const auto& r : Need(c, "candidates").records) content += curation::Serialize(r) + "\n";
    io::WriteFile(Need(path, "path"), content);
  });
}

hm_status hm_candidates_attach_attributions(hm_candidates* c, const char* path) {
  return Guard([&] {
    auto& records = Need(c, "candidates").records;
    auto in = OpenInput(path);
    auto scores = curation::ParseAttributions(in);
    for (auto& r : records) {
      auto it = scores.find(r.id);
      if (it == scores.end()) continue;
      if (it->second.size() != r.tokens.size()) {
        throw ValidationError("candidate " + r.id + ": " + std::to_string(it->second.size()) +
                              " attribution scores for " + std::to_string(r.tokens.size()) +
                              " tokens");
      }
      r.attribution_scores = it->second;
    }
  });
}

hm_status hm_candidates_mask(const hm_candidates* c, double threshold, const char* out_path,
                             hm_mask_stats* stats) {
  return Guard([&] {
    Need(out_path, "output path");
    hm_mask_stats s{};
    std::string content;
    for (const auto& r : Need(c, "candidates").records) {
      if (!r.attribution_scores) {
        throw ValidationError("candidate " + r.id + " has no attribution scores");
      }
      auto masked = curation::MaskByAttribution(r.tokens, *r.attribution_scores, threshold, r.id);
      ++s.sentences;
      s.masked_tokens += masked.mask_positions.size();
      content += corpus::MaskedToJson(masked, r.target) + "\n";
    }
    io::WriteFile(out_path, content);
    if (stats) *stats = s;
  });
}

// ---- curriculum --------------------------------------------------------------

hm_status hm_plan_builtin(const char* name, hm_plan** out) {
  return Guard([&] {
    Need(out, "out");
    *out = new hm_plan{curation::BuiltinPlan(Need(name, "name"))};
  });
}

hm_status hm_plan_read(const char* path, const char* name, hm_plan** out) {
  return Guard([&] {
    Need(out, "out");
    Need(name, "name");
    for (auto& plan : curation::ParsePlans(io::ReadFile(Need(path, "path")))) {
      if (plan.name == name) {
        *out = new hm_plan{std::move(plan)};
        return;
      }
    }
    throw ValidationError(std::string("plan '") + name + "' not found in '" + path + "'");
  });
}

size_t hm_plan_stage_count(const hm_plan* plan) { return plan ? plan->plan.stages.size() : 0; }
void hm_plan_free(hm_plan* plan) { delete plan; }

hm_status hm_curriculum_build(const hm_candidates* c, const hm_plan* plan, uint64_t seed,
                              hm_sampling sampling, hm_manifest** out) {
  return Guard([&] {
    Need(out, "out");
    curation::MixedSampling mode;
    switch (sampling) {
      case HM_SAMPLING_UNIFORM_UNION: mode = curation::MixedSampling::kUniformUnion; break;
      case HM_SAMPLING_BALANCED_LEVELS: mode = curation::MixedSampling::kBalancedLevels; break;
      default: throw ArgumentError("unknown sampling mode");
    }
    auto m = std::make_unique<hm_manifest>();
    m->manifest = curation::BuildCurriculum(Need(c, "candidates").records,
                                            Need(plan, "plan").plan, seed, mode);
    *out = m.release();
  });
}

size_t hm_manifest_stage_count(const hm_manifest* m) { return m ? m->manifest.stages.size() : 0; }

hm_status hm_manifest_stage_size(const hm_manifest* m, size_t stage, size_t* size) {
  return Guard([&] {
    const auto& stages = Need(m, "manifest").manifest.stages;
    CheckIndex(stage, stages.size());
    Need(size, "size") = stages[stage].sample_ids.size();
  });
}

hm_status hm_manifest_sample_id(const hm_manifest* m, size_t stage, size_t index,
                                const char** id) {
  return Guard([&] {
    const auto& stages = Need(m, "manifest").manifest.stages;
    CheckIndex(stage, stages.size());
    CheckIndex(index, stages[stage].sample_ids.size());
    Need(id, "id") = stages[stage].sample_ids[index].c_str();
  });
}

hm_status hm_manifest_to_json(const hm_manifest* m, char** out) {
  return Guard([&] {
    Need(out, "out") = CopyString(curation::ManifestToJson(Need(m, "manifest").manifest));
  });
}

hm_status hm_manifest_write(const hm_manifest* m, const char* path) {
  return Guard([&] {
    io::WriteFile(Need(path, "path"), curation::ManifestToJson(Need(m, "manifest").manifest));
  });
}

void hm_manifest_free(hm_manifest* m) { delete m; }

// ---- prompts -----------------------------------------------------------------

hm_status hm_prompt_bank_load(const char* path, hm_prompt_bank** out) {
  return Guard([&] {
    Need(out, "out");
    auto bank = std::make_unique<hm_prompt_bank>();
    bank->entries = path ? prompts::ParsePromptBank(io::ReadFile(path))
                         : prompts::TrainingPromptBank();
    *out = bank.release();
  });
}

size_t hm_prompt_bank_size(const hm_prompt_bank* bank) { return bank ? bank->entries.size() : 0; }

const char* hm_prompt_bank_entry(const hm_prompt_bank* bank, size_t index) {
  if (!bank || index >= bank->entries.size()) return nullptr;
  return bank->entries[index].text.c_str();
}

hm_status hm_prompt_pick(const hm_prompt_bank* bank, uint64_t sample_index, uint64_t seed,
                         size_t* index) {
  return Guard([&] {
    auto p = prompts::PickTrainingPrompt(sample_index, seed, Need(bank, "bank").entries);
    Need(index, "index") = static_cast<std::size_t>(p.index - 1);
  });
}

void hm_prompt_bank_free(hm_prompt_bank* bank) { delete bank; }

const char* hm_test_prompt(void) { return prompts::TestPrompt().c_str(); }

hm_status hm_render_generation_prompt(const char* example_1, const char* example_2,
                                      const char* keyword, char** out) {
  return Guard([&] {
    Need(out, "out");
    prompts::GenerationPromptInput input{Need(example_1, "example"), Need(example_2, "example"),
                                         Need(keyword, "keyword"), ""};
    *out = CopyString(prompts::RenderGenerationPrompt(input));
  });
}

hm_status hm_pick_examples(const hm_corpus* c, const char* target, uint64_t seed,
                           char** chosen_target, char** example_1, char** example_2) {
  return Guard([&] {
    auto pair = prompts::PickExamplePair(Need(c, "corpus").parsed.records,
                                         target ? target : "", seed);
    Need(chosen_target, "out");
    Need(example_1, "out");
    Need(example_2, "out");
    *chosen_target = CopyString(pair.target);
    *example_1 = CopyString(pair.example_1);
    *example_2 = CopyString(pair.example_2);
  });
}

// ---- scoring -----------------------------------------------------------------

hm_status hm_evaluate_pair(const char* ref, const char* hyp, hm_eval_result* out) {
  return Guard([&] {
    auto r = metrics::ReferenceFromText(Need(ref, "ref"));
    auto h = metrics::Tokenize(Need(hyp, "hyp"));
    Fill(metrics::Evaluate(r, h), out);
  });
}

hm_status hm_evaluate_tokens(const char* const* ref, size_t ref_size, const char* const* hyp,
                             size_t hyp_size, hm_eval_result* out) {
  return Guard([&] {
    auto r = corpus::MaskedSentence::FromTokens(ToTokens(ref, ref_size));
    Fill(metrics::Evaluate(r, ToTokens(hyp, hyp_size)), out);
  });
}

hm_status hm_score_read(const char* path, hm_aggregation aggregation, hm_report** out) {
  return Guard([&] {
    Need(out, "out");
    metrics::Aggregation mode;
    switch (aggregation) {
      case HM_AGGREGATION_MICRO: mode = metrics::Aggregation::kMicro; break;
      case HM_AGGREGATION_MACRO: mode = metrics::Aggregation::kMacro; break;
      default: throw ArgumentError("unknown aggregation");
    }
    auto in = OpenInput(path);
    auto pairs = metrics::ParseScoringInput(in);
    auto r = std::make_unique<hm_report>();
    r->report = metrics::EvaluateCorpus(pairs, mode);
    *out = r.release();
  });
}

size_t hm_report_size(const hm_report* r) { return r ? r->report.per_utterance.size() : 0; }

hm_status hm_report_result(const hm_report* r, size_t index, const char** id,
                           hm_eval_result* out) {
  return Guard([&] {
    const auto& rows = Need(r, "report").report.per_utterance;
    CheckIndex(index, rows.size());
    if (id) *id = rows[index].first.c_str();
    Fill(rows[index].second, out);
  });
}

hm_status hm_report_pooled(const hm_report* r, hm_eval_result* out) {
  return Guard([&] { Fill(Need(r, "report").report.pooled, out); });
}

hm_status hm_report_to_json(const hm_report* r, char** out) {
  return Guard([&] { Need(out, "out") = CopyString(metrics::ReportToJson(Need(r, "report").report)); });
}

hm_status hm_report_to_table(const hm_report* r, char** out) {
  return Guard([&] { Need(out, "out") = CopyString(metrics::ReportToTable(Need(r, "report").report)); });
}

void hm_report_free(hm_report* r) { delete r; }

// ---- objectives --------------------------------------------------------------

hm_status hm_cross_entropy(const double* probabilities, size_t steps, size_t vocab,
                           const size_t* targets, double* out) {
  return Guard([&] {
    if (steps > 0) Need(targets, "targets");
    objectives::ObjectiveInput input{"", ToSteps(probabilities, steps, vocab),
                                     std::vector<std::size_t>(targets, targets + steps)};
    Need(out, "out") = objectives::CrossEntropy(input);
  });
}

hm_status hm_kl_divergence(const double* adapted, const double* reference, size_t steps,
                           size_t vocab, double* out) {
  return Guard([&] {
    Need(out, "out") = objectives::KlDivergence(ToSteps(adapted, steps, vocab),
                                                ToSteps(reference, steps, vocab));
  });
}

hm_status hm_softmax(const double* logits, size_t size, double* out) {
  return Guard([&] {
    Need(logits, "logits");
    Need(out, "out");
    auto dist = objectives::Softmax(std::span<const double>(logits, size));
    std::copy(dist.probabilities().begin(), dist.probabilities().end(), out);
  });
}

hm_status hm_check_gradients(uint64_t seed, size_t trials, size_t steps, size_t vocab,
                             double eps, hm_gradcheck_report* out) {
  return Guard([&] {
    auto r = objectives::RunGradientChecks(seed, trials, steps, vocab, eps);
    Need(out, "out") = hm_gradcheck_report{r.trials, r.cross_entropy_max_error, r.kl_max_error};
  });
}

}  // extern "C"
