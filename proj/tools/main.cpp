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

// Command-line front end. Talks to the library only through hatemask.h.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.hpp"
#include "hatemask.h"

namespace fs = std::filesystem;
using hatemask::cli::PipelineConfig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitUsage = 64;
constexpr double kGradientTolerance = 1e-4;

struct Failure {
  int code;
  std::string message;
};

int ExitCodeFor(hm_status status) { return status == HM_ERR_IO ? kExitIo : kExitValidation; }

void Check(hm_status status, const std::string& context) {
  if (status == HM_OK) return;
  throw Failure{ExitCodeFor(status), context + ": " + hm_last_error()};
}

// Owning wrapper for handles released by a C free function.
template <typename T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr); }
  T** out() { return &ptr; }
  T* get() const { return ptr; }
};

void FreeString(char* s) { hm_string_free(s); }

using Corpus = Handle<hm_corpus, hm_corpus_free>;
using Terms = Handle<hm_terms, hm_terms_free>;
using Strings = Handle<hm_strings, hm_strings_free>;
using LabelMap = Handle<hm_label_map, hm_label_map_free>;
using Verdicts = Handle<hm_verdicts, hm_verdicts_free>;
using Candidates = Handle<hm_candidates, hm_candidates_free>;
using Plan = Handle<hm_plan, hm_plan_free>;
using Manifest = Handle<hm_manifest, hm_manifest_free>;
using Bank = Handle<hm_prompt_bank, hm_prompt_bank_free>;
using Report = Handle<hm_report, hm_report_free>;
using OwnedString = Handle<char, FreeString>;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string output;
  std::optional<std::string> output_dir;
  bool redact = false;
  bool skip_invalid = false;
  std::optional<int> min_level;
  std::string plan;
  std::optional<double> attribution;
  std::optional<std::string> aggregation;
  std::optional<std::string> corpus, verdicts, candidates, attributions, overrides, stoplist, plans;

  // subcommand specific
  std::optional<int> annotator_votes, keyword_votes, min_count;
  std::string patterns;
  bool all_records = false;
  bool balance_levels = false;
  std::string prompt_mode;
  std::string keyword, keywords_file, target, bank;
  std::uint64_t sample_index = 0;
  std::size_t pick_count = 15;
  std::string input;
  std::size_t trials = 100, steps = 3, vocab = 5;
  double eps = 1e-5;
};

std::string Require(const std::string& value, const char* what) {
  if (value.empty()) throw Failure{kExitValidation, std::string("no ") + what + " given"};
  return value;
}

std::string OutputPath(const Flags& f, const PipelineConfig& c, const std::string& default_name) {
  fs::path path = f.output.empty() ? fs::path(c.paths.output_dir) / default_name : fs::path(f.output);
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) {
    throw Failure{kExitIo, "cannot create output directory '" + path.parent_path().string() +
                               "': " + ec.message()};
  }
  return path.string();
}

// Prints each record-level error; fails unless --skip-invalid.
template <typename Obj, typename CountFn, typename ErrFn>
void ReportRecordErrors(const Flags& f, const char* what, const Obj* obj, CountFn count, ErrFn err) {
  const std::size_t n = count(obj);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t line = 0;
    const char* message = nullptr;
    err(obj, i, &line, &message);
    std::cerr << what << " line " << line << ": " << message << "\n";
  }
  if (n > 0 && !f.skip_invalid) {
    throw Failure{kExitValidation, std::to_string(n) + " invalid " + what + " record(s)"};
  }
}

std::string Shown(const Flags& f, const std::string& text) {
  if (!f.redact) return text;
  OwnedString out;
  Check(hm_redact(text.c_str(), out.out()), "redact");
  return out.get();
}

std::unique_ptr<LabelMap> MakeLabelMap(const PipelineConfig& c) {
  auto map = std::make_unique<LabelMap>();
  map->ptr = hm_label_map_new();
  for (const auto& [raw, hateful] : c.label_map) {
    Check(hm_label_map_set(map->get(), raw.c_str(), hateful ? 1 : 0), "label map");
  }
  return map;
}

void LoadCorpus(const Flags& f, const PipelineConfig& c, Corpus& corpus) {
  Check(hm_corpus_read(Require(c.paths.corpus, "corpus (--corpus)").c_str(), corpus.out()),
        "corpus");
  ReportRecordErrors(f, "corpus", corpus.get(), hm_corpus_error_count, hm_corpus_error);
}

void LoadCandidates(const Flags& f, const PipelineConfig& c, Candidates& candidates,
                    Verdicts& verdicts) {
  auto labels = MakeLabelMap(c);
  if (!c.paths.verdicts.empty()) {
    Check(hm_verdicts_read(c.paths.verdicts.c_str(), labels->get(), verdicts.out()), "verdicts");
    ReportRecordErrors(f, "verdicts", verdicts.get(), hm_verdicts_error_count, hm_verdicts_error);
  }
  Check(hm_candidates_read(Require(c.paths.candidates, "candidates (--candidates)").c_str(),
                           verdicts.get(), labels->get(), candidates.out()),
        "candidates");
  ReportRecordErrors(f, "candidates", candidates.get(), hm_candidates_error_count,
                     hm_candidates_error);
  for (std::size_t i = 0; i < hm_candidates_warning_count(candidates.get()); ++i) {
    const char *id = nullptr, *keyword = nullptr, *text = nullptr;
    Check(hm_candidates_warning(candidates.get(), i, &id, &keyword, &text), "candidates");
    std::cerr << "warning: candidate " << id << " lacks its keyword '" << Shown(f, keyword)
              << "': " << Shown(f, text) << "\n";
  }
}

int RunIngest(const Flags& f, const PipelineConfig& c) {
  Corpus corpus;
  LoadCorpus(f, c, corpus);
  hm_ingest_options options;
  hm_ingest_options_init(&options);
  options.vote_threshold = c.thresholds.annotator_votes;
  if (!c.paths.overrides.empty()) options.overrides_path = c.paths.overrides.c_str();
  if (!f.patterns.empty()) options.patterns_path = f.patterns.c_str();
  const std::string out = OutputPath(f, c, "masked_references.jsonl");
  hm_ingest_stats stats{};
  Check(hm_corpus_ingest(corpus.get(), &options, out.c_str(), &stats), "ingest");
  std::printf("ingest: %zu records, %zu unanimous hateful, %zu kept, %zu dropped by prefilter, "
              "%zu masked tokens -> %s\n",
              stats.records, stats.unanimous_hateful, stats.kept, stats.dropped_by_prefilter,
              stats.masked_tokens, out.c_str());
  return kExitOk;
}

int RunKeywords(const Flags& f, const PipelineConfig& c) {
  Corpus corpus;
  LoadCorpus(f, c, corpus);
  const char* stoplist = c.paths.stoplist.empty() ? nullptr : c.paths.stoplist.c_str();
  Terms terms;
  Check(hm_frequent_terms(corpus.get(), c.thresholds.min_count, stoplist, f.all_records ? 0 : 1,
                          terms.out()),
        "keywords");
  std::string preview;
  for (std::size_t i = 0; i < std::min<std::size_t>(5, hm_terms_size(terms.get())); ++i) {
    const char* term = nullptr;
    Check(hm_terms_at(terms.get(), i, &term, nullptr), "keywords");
    preview += (i ? " " : "") + Shown(f, term);
  }
  if (c.paths.verdicts.empty()) {
    const std::string out = OutputPath(f, c, "frequent_terms.tsv");
    Check(hm_terms_write(terms.get(), out.c_str()), "keywords");
    std::printf("keywords: %zu frequent terms (min_count %d) [%s] -> %s\n",
                hm_terms_size(terms.get()), c.thresholds.min_count, preview.c_str(), out.c_str());
    return kExitOk;
  }
  auto labels = MakeLabelMap(c);
  Verdicts verdicts;
  Check(hm_verdicts_read(c.paths.verdicts.c_str(), labels->get(), verdicts.out()), "verdicts");
  ReportRecordErrors(f, "verdicts", verdicts.get(), hm_verdicts_error_count, hm_verdicts_error);
  Strings selected;
  Check(hm_select_keywords(terms.get(), verdicts.get(), c.thresholds.keyword_votes,
                           selected.out()),
        "keywords");
  const std::string out = OutputPath(f, c, "keywords.txt");
  Check(hm_strings_write(selected.get(), out.c_str()), "keywords");
  std::printf("keywords: %zu frequent terms (min_count %d) [%s], %zu selected (>= %d of 5 votes) "
              "-> %s\n",
              hm_terms_size(terms.get()), c.thresholds.min_count, preview.c_str(),
              hm_strings_size(selected.get()), c.thresholds.keyword_votes, out.c_str());
  return kExitOk;
}

int RunFilter(const Flags& f, const PipelineConfig& c) {
  Candidates candidates;
  Verdicts verdicts;
  LoadCandidates(f, c, candidates, verdicts);
  Candidates kept;
  Check(hm_candidates_filter(candidates.get(), c.thresholds.min_level, kept.out()), "filter");
  const std::string out = OutputPath(f, c, "filtered_candidates.jsonl");
  Check(hm_candidates_write(kept.get(), out.c_str()), "filter");
  std::printf("filter: %zu candidates, %zu at hate level >= %d -> %s\n",
              hm_candidates_size(candidates.get()), hm_candidates_size(kept.get()),
              c.thresholds.min_level, out.c_str());
  return kExitOk;
}

int RunMask(const Flags& f, const PipelineConfig& c) {
  Candidates candidates;
  Verdicts verdicts;
  LoadCandidates(f, c, candidates, verdicts);
  if (!c.paths.attributions.empty()) {
    Check(hm_candidates_attach_attributions(candidates.get(), c.paths.attributions.c_str()),
          "attributions");
  }
  const std::string out = OutputPath(f, c, "masked_candidates.jsonl");
  hm_mask_stats stats{};
  Check(hm_candidates_mask(candidates.get(), c.thresholds.attribution, out.c_str(), &stats),
        "mask");
  std::printf("mask: %zu sentences, %zu masked tokens (score > %g) -> %s\n", stats.sentences,
              stats.masked_tokens, c.thresholds.attribution, out.c_str());
  return kExitOk;
}

int RunCurriculum(const Flags& f, const PipelineConfig& c) {
  const std::string name = Require(f.plan, "plan (--plan)");
  Candidates candidates;
  Verdicts verdicts;
  LoadCandidates(f, c, candidates, verdicts);
  Plan plan;
  if (!c.paths.plans.empty()) {
    Check(hm_plan_read(c.paths.plans.c_str(), name.c_str(), plan.out()), "plan");
  } else {
    Check(hm_plan_builtin(name.c_str(), plan.out()), "plan");
  }
  Manifest manifest;
  Check(hm_curriculum_build(candidates.get(), plan.get(), c.seed,
                            f.balance_levels ? HM_SAMPLING_BALANCED_LEVELS
                                             : HM_SAMPLING_UNIFORM_UNION,
                            manifest.out()),
        "curriculum");
  const std::string out = OutputPath(f, c, "manifest-" + name + ".json");
  Check(hm_manifest_write(manifest.get(), out.c_str()), "curriculum");
  std::string sizes;
  for (std::size_t s = 0; s < hm_manifest_stage_count(manifest.get()); ++s) {
    std::size_t n = 0;
    Check(hm_manifest_stage_size(manifest.get(), s, &n), "curriculum");
    sizes += (s ? "+" : "") + std::to_string(n);
  }
  std::printf("curriculum: plan %s, seed %llu, stages %s -> %s\n", name.c_str(),
              static_cast<unsigned long long>(c.seed), sizes.c_str(), out.c_str());
  return kExitOk;
}

void Emit(const Flags& f, const PipelineConfig& c, const std::string& content,
          const std::string& what) {
  if (f.output.empty()) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  const std::string out = OutputPath(f, c, "");
  FILE* file = std::fopen(out.c_str(), "wb");
  if (!file) throw Failure{kExitIo, "cannot open '" + out + "' for writing"};
  const bool ok = std::fwrite(content.data(), 1, content.size(), file) == content.size();
  if (std::fclose(file) != 0 || !ok) throw Failure{kExitIo, "write failure on '" + out + "'"};
  std::printf("prompts: %s -> %s\n", what.c_str(), out.c_str());
}

std::string JsonEscape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out;
}

int RunPrompts(const Flags& f, const PipelineConfig& c) {
  Bank bank;
  Check(hm_prompt_bank_load(f.bank.empty() ? nullptr : f.bank.c_str(), bank.out()), "prompt bank");
  if (f.prompt_mode == "bank") {
    std::string content;
    for (std::size_t i = 0; i < hm_prompt_bank_size(bank.get()); ++i) {
      content += std::to_string(i + 1) + "\t" + hm_prompt_bank_entry(bank.get(), i) + "\n";
    }
    Emit(f, c, content, "training bank");
  } else if (f.prompt_mode == "test") {
    Emit(f, c, std::string(hm_test_prompt()) + "\n", "test prompt");
  } else if (f.prompt_mode == "pick") {
    std::string content;
    for (std::size_t k = 0; k < f.pick_count; ++k) {
      std::size_t index = 0;
      const std::uint64_t sample = f.sample_index + k;
      Check(hm_prompt_pick(bank.get(), sample, c.seed, &index), "pick");
      content += std::to_string(sample) + "\t" + std::to_string(index + 1) + "\t" +
                 hm_prompt_bank_entry(bank.get(), index) + "\n";
    }
    Emit(f, c, content, "prompt assignment");
  } else {  // generate
    std::vector<std::string> keywords;
    if (!f.keyword.empty()) keywords.push_back(f.keyword);
    if (!f.keywords_file.empty()) {
      FILE* in = std::fopen(f.keywords_file.c_str(), "rb");
      if (!in) throw Failure{kExitIo, "cannot open '" + f.keywords_file + "' for reading"};
      char line[4096];
      while (std::fgets(line, sizeof(line), in)) {
        std::string kw(line);
        while (!kw.empty() && (kw.back() == '\n' || kw.back() == '\r')) kw.pop_back();
        if (!kw.empty()) keywords.push_back(kw);
      }
      std::fclose(in);
    }
    if (keywords.empty()) throw Failure{kExitValidation, "no keyword (--keyword or --keywords-file)"};
    Corpus corpus;
    LoadCorpus(f, c, corpus);
    const bool batch = !f.keywords_file.empty();
    std::string content;
    for (std::size_t k = 0; k < keywords.size(); ++k) {
      OwnedString target, ex1, ex2, prompt;
      Check(hm_pick_examples(corpus.get(), f.target.c_str(), c.seed + k, target.out(), ex1.out(),
                             ex2.out()),
            "examples");
      Check(hm_render_generation_prompt(ex1.get(), ex2.get(), keywords[k].c_str(), prompt.out()),
            "render");
      if (batch) {
        content += "{\"keyword\":\"" + JsonEscape(keywords[k]) + "\",\"target\":\"" +
                   JsonEscape(target.get()) + "\",\"prompt\":\"" + JsonEscape(prompt.get()) +
                   "\"}\n";
      } else {
        content += std::string(prompt.get()) + "\n";
      }
    }
    Emit(f, c, content, std::to_string(keywords.size()) + " generation prompt(s)");
  }
  return kExitOk;
}

std::string Pct(int has, double v) {
  if (!has) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

int RunScore(const Flags& f, const PipelineConfig& c) {
  const std::string input = Require(f.input, "scoring input (--input)");
  Report report;
  Check(hm_score_read(input.c_str(),
                      c.aggregation == "macro" ? HM_AGGREGATION_MACRO : HM_AGGREGATION_MICRO,
                      report.out()),
        "score");
  OwnedString table, json;
  Check(hm_report_to_table(report.get(), table.out()), "score");
  Check(hm_report_to_json(report.get(), json.out()), "score");
  const std::string out = OutputPath(f, c, "report.json");
  FILE* file = std::fopen(out.c_str(), "wb");
  if (!file) throw Failure{kExitIo, "cannot open '" + out + "' for writing"};
  const std::string body = json.get();
  const bool ok = std::fwrite(body.data(), 1, body.size(), file) == body.size();
  if (std::fclose(file) != 0 || !ok) throw Failure{kExitIo, "write failure on '" + out + "'"};
  hm_eval_result pooled{};
  Check(hm_report_pooled(report.get(), &pooled), "score");
  std::fputs(table.get(), stdout);
  std::printf("score: %zu utterances, pooled MAR %s WER %s UMWER %s (%s) -> %s\n",
              hm_report_size(report.get()), Pct(pooled.has_mar, pooled.mar).c_str(),
              Pct(1, pooled.wer).c_str(), Pct(pooled.has_umwer, pooled.umwer).c_str(),
              c.aggregation.c_str(), out.c_str());
  return kExitOk;
}

int RunCheckGradients(const Flags& f, const PipelineConfig& c) {
  hm_gradcheck_report r{};
  Check(hm_check_gradients(c.seed, f.trials, f.steps, f.vocab, f.eps, &r), "check-gradients");
  const bool pass = r.cross_entropy_max_error < kGradientTolerance &&
                    r.kl_max_error < kGradientTolerance;
  std::printf("check-gradients: %zu trials (T=%zu, V=%zu, eps=%g), max relative error "
              "cross_entropy %.3e kl %.3e, tolerance %.0e: %s\n",
              r.trials, f.steps, f.vocab, f.eps, r.cross_entropy_max_error, r.kl_max_error,
              kGradientTolerance, pass ? "PASS" : "FAIL");
  return pass ? kExitOk : kExitValidation;
}

PipelineConfig ResolveConfig(const Flags& f) {
  PipelineConfig c;
  std::string path = f.config;
  if (path.empty()) {
    if (const char* env = std::getenv(hatemask::cli::kConfigEnv)) path = env;
  }
  if (!path.empty()) c = hatemask::cli::LoadConfig(path);

  auto set = [](const std::optional<std::string>& flag, std::string& field) {
    if (flag) field = *flag;
  };
  set(f.corpus, c.paths.corpus);
  set(f.verdicts, c.paths.verdicts);
  set(f.candidates, c.paths.candidates);
  set(f.attributions, c.paths.attributions);
  set(f.overrides, c.paths.overrides);
  set(f.stoplist, c.paths.stoplist);
  set(f.plans, c.paths.plans);
  set(f.output_dir, c.paths.output_dir);
  set(f.aggregation, c.aggregation);
  if (f.seed) c.seed = *f.seed;
  if (f.min_level) c.thresholds.min_level = *f.min_level;
  if (f.attribution) c.thresholds.attribution = *f.attribution;
  if (f.annotator_votes) c.thresholds.annotator_votes = *f.annotator_votes;
  if (f.keyword_votes) c.thresholds.keyword_votes = *f.keyword_votes;
  if (f.min_count) c.thresholds.min_count = *f.min_count;
  hatemask::cli::Validate(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curation, prompting and MAR/WER/UMWER scoring for masked hate-speech "
               "transcription."};
  app.require_subcommand(1);
  Flags f;

  app.add_option("--config", f.config, "JSON config file (default: $HATEMASK_CONFIG)");
  app.add_option("--seed", f.seed, "Seed for every random choice");
  app.add_option("--output", f.output, "Output file");
  app.add_option("--output-dir", f.output_dir, "Directory for default output files");
  app.add_flag("--redact", f.redact, "Hash non-mask tokens in logs and summaries");
  app.add_flag("--skip-invalid", f.skip_invalid, "Skip malformed corpus, verdict and candidate records (scoring input stays strict)");
  app.add_option("--min-level", f.min_level, "Minimum hate level kept by filter (0-5)");
  app.add_option("--plan", f.plan, "Curriculum plan name");
  app.add_option("--threshold-attribution", f.attribution, "Attribution mask threshold");
  app.add_option("--aggregation", f.aggregation, "micro or macro pooling");
  app.add_option("--corpus", f.corpus, "Annotated corpus (JSON lines)");
  app.add_option("--verdicts", f.verdicts, "Ensemble verdicts (JSON lines)");
  app.add_option("--candidates", f.candidates, "Generated candidates (JSON lines)");
  app.add_option("--attributions", f.attributions, "Per-token attribution scores (JSON lines)");
  app.add_option("--overrides", f.overrides, "Prefilter override list (+id / -id)");
  app.add_option("--stoplist", f.stoplist, "Stop-list for frequent terms ('' disables)");
  app.add_option("--plans", f.plans, "Curriculum plan file");

  auto* ingest = app.add_subcommand("ingest", "Select, prefilter and mask annotated sentences");
  ingest->add_option("--annotator-votes", f.annotator_votes, "Votes needed to mask a token (1-3)");
  ingest->add_option("--patterns", f.patterns, "Emoticon/URL regex list replacing the defaults");

  auto* keywords = app.add_subcommand("keywords", "Frequent terms and ensemble keyword selection");
  keywords->add_option("--min-count", f.min_count, "Minimum term frequency");
  keywords->add_option("--keyword-votes", f.keyword_votes, "Hateful votes needed (of 5)");
  keywords->add_flag("--all-records", f.all_records, "Count terms over every record");

  app.add_subcommand("filter", "Assign hate levels and keep candidates at --min-level or above");
  app.add_subcommand("mask", "Mask candidate tokens by attribution score");

  auto* curriculum = app.add_subcommand("curriculum", "Build a seeded curriculum manifest");
  curriculum->add_flag("--balance-levels", f.balance_levels,
                       "Split mixed stages equally across levels");

  auto* prompts = app.add_subcommand("prompts", "Instruction prompts and generation prompts");
  prompts->add_option("mode", f.prompt_mode, "bank | test | pick | generate")
      ->required()
      ->check(CLI::IsMember({"bank", "test", "pick", "generate"}));
  prompts->add_option("--keyword", f.keyword, "Mandatory keyword");
  prompts->add_option("--keywords-file", f.keywords_file, "One keyword per line (JSON-lines output)");
  prompts->add_option("--target", f.target, "Shared target group of the two examples");
  prompts->add_option("--bank", f.bank, "Prompt bank file replacing the built-in one");
  prompts->add_option("--sample-index", f.sample_index, "First sample index for pick");
  prompts->add_option("--count", f.pick_count, "Number of samples for pick");

  auto* score = app.add_subcommand("score", "Score hypotheses with MAR, WER and UMWER");
  score->add_option("input,--input", f.input, "Scoring input (JSON lines id/ref/hyp)");

  auto* gradients = app.add_subcommand("check-gradients", "Finite-difference objective checks");
  gradients->add_option("--trials", f.trials, "Number of random seeds");
  gradients->add_option("--steps", f.steps, "Time steps per trial");
  gradients->add_option("--vocab", f.vocab, "Vocabulary size");
  gradients->add_option("--eps", f.eps, "Central-difference step");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    PipelineConfig config = ResolveConfig(f);
    std::cerr << "hatemask " << hm_version() << " " << name
              << " config: " << hatemask::cli::Describe(config) << "\n";
    if (name == "ingest") return RunIngest(f, config);
    if (name == "keywords") return RunKeywords(f, config);
    if (name == "filter") return RunFilter(f, config);
    if (name == "mask") return RunMask(f, config);
    if (name == "curriculum") return RunCurriculum(f, config);
    if (name == "prompts") return RunPrompts(f, config);
    if (name == "score") return RunScore(f, config);
    if (name == "check-gradients") return RunCheckGradients(f, config);
  } catch (const Failure& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const hatemask::cli::ConfigIoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const hatemask::cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  std::cerr << app.help();
  return kExitUsage;
}
