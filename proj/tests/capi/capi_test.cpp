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

// Exercises the shared library strictly through its C header.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "hatemask.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hatemask_capi_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string Write(const std::string& name, const std::string& content) const {
    std::ofstream(path / name) << content;
    return (path / name).string();
  }
  std::string File(const std::string& name) const { return (path / name).string(); }
};

std::string Read(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string Take(char* s) {
  std::string out = s ? s : "";
  hm_string_free(s);
  return out;
}

const char* const kCorpus =
    R"({"id":"1","text":"You are a pig and always will be","annotators":["hateful","hateful","hateful"],"target":"Women","rationales":[[3],[3],[]]})"
    "\n"
    R"j({"id":"2","text":"those pigs again :)","annotators":["hateful","hateful","hateful"],"target":"Women","rationales":[[1],[1],[1]]})j"
    "\n"
    R"({"id":"3","text":"nice weather","annotators":["normal","normal","normal"]})"
    "\n"
    R"({"id":"4","text":"pig pig women","annotators":["hateful","hateful","hateful"],"target":"Women","rationales":[[0,1],[0],[1]]})"
    "\n";

std::string Candidates(const std::vector<int>& levels) {
  std::string out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    std::string labels;
    for (int k = 0; k < 5; ++k) labels += std::string(k ? "," : "") + (k < levels[i] ? "\"Hateful\"" : "\"Normal\"");
    out += "{\"id\":\"c" + std::to_string(i) + "\",\"text\":\"word pig\",\"keyword\":\"pig\",\"labels\":[" +
           labels + "]}\n";
  }
  return out;
}

}  // namespace

TEST_CASE("basics") {
  CHECK(std::string(hm_version()) == "1.0.0");
  CHECK(std::string(hm_mask_token()) == "***");
  char* out = nullptr;
  REQUIRE(hm_tokenize("Hello, *** World!", &out) == HM_OK);
  CHECK(Take(out) == "hello *** world");
  REQUIRE(hm_redact("secret *** secret", &out) == HM_OK);
  std::string redacted = Take(out);
  CHECK(redacted.find("secret") == std::string::npos);
  CHECK(redacted.find("***") != std::string::npos);
  CHECK(hm_tokenize(nullptr, &out) == HM_ERR_ARGUMENT);
  CHECK(std::string(hm_last_error()).find("null") != std::string::npos);
  hm_string_free(nullptr);
}

TEST_CASE("corpus handles and ingest") {
  TempDir dir;
  hm_corpus* corpus = nullptr;
  REQUIRE(hm_corpus_read(dir.Write("corpus.jsonl", kCorpus).c_str(), &corpus) == HM_OK);
  CHECK(hm_corpus_size(corpus) == 4);
  CHECK(hm_corpus_error_count(corpus) == 0);
  const char* id = nullptr;
  REQUIRE(hm_corpus_record_id(corpus, 2, &id) == HM_OK);
  CHECK(std::string(id) == "3");
  int unanimous = -1;
  REQUIRE(hm_corpus_is_unanimous_hateful(corpus, 2, &unanimous) == HM_OK);
  CHECK(unanimous == 0);
  CHECK(hm_corpus_record_id(corpus, 9, &id) == HM_ERR_ARGUMENT);

  hm_ingest_options options;
  hm_ingest_options_init(&options);
  CHECK(options.vote_threshold == 2);
  hm_ingest_stats stats{};
  const std::string out = dir.File("masked.jsonl");
  REQUIRE(hm_corpus_ingest(corpus, &options, out.c_str(), &stats) == HM_OK);
  CHECK(stats.records == 4);
  CHECK(stats.unanimous_hateful == 3);
  CHECK(stats.dropped_by_prefilter == 1);
  CHECK(stats.kept == 2);
  CHECK(stats.masked_tokens == 3);
  std::string written = Read(out);
  CHECK(written.find("you are a *** and always will be") != std::string::npos);
  CHECK(written.find("*** *** women") != std::string::npos);

  const std::string overrides = dir.Write("overrides.txt", "+2\n-4\n");
  options.overrides_path = overrides.c_str();
  REQUIRE(hm_corpus_ingest(corpus, &options, out.c_str(), &stats) == HM_OK);
  CHECK(stats.kept == 2);
  CHECK(Read(out).find("those *** again") != std::string::npos);

  options.vote_threshold = 7;
  CHECK(hm_corpus_ingest(corpus, &options, out.c_str(), &stats) == HM_ERR_VALIDATION);
  options.vote_threshold = 2;
  options.overrides_path = nullptr;
  CHECK(hm_corpus_ingest(corpus, &options, (dir.File("no/such/dir") + "/x").c_str(), &stats) ==
        HM_ERR_IO);
  hm_corpus_free(corpus);

  CHECK(hm_corpus_read(dir.File("missing.jsonl").c_str(), &corpus) == HM_ERR_IO);
  const char bad[] = "{\"id\":\"x\",\"tokens\":[\"a\"],\"annotators\":[\"normal\"]}\n";
  REQUIRE(hm_corpus_parse(bad, sizeof(bad) - 1, &corpus) == HM_OK);
  CHECK(hm_corpus_size(corpus) == 0);
  REQUIRE(hm_corpus_error_count(corpus) == 1);
  std::size_t line = 0;
  const char* message = nullptr;
  REQUIRE(hm_corpus_error(corpus, 0, &line, &message) == HM_OK);
  CHECK(line == 1);
  hm_corpus_free(corpus);
}

TEST_CASE("terms, verdicts and keywords") {
  TempDir dir;
  hm_corpus* corpus = nullptr;
  REQUIRE(hm_corpus_read(dir.Write("corpus.jsonl", kCorpus).c_str(), &corpus) == HM_OK);
  hm_terms* terms = nullptr;
  REQUIRE(hm_frequent_terms(corpus, 2, nullptr, 1, &terms) == HM_OK);
  REQUIRE(hm_terms_size(terms) >= 1);
  const char* term = nullptr;
  std::size_t count = 0;
  REQUIRE(hm_terms_at(terms, 0, &term, &count) == HM_OK);
  CHECK(std::string(term) == "pig");
  CHECK(count == 3);
  REQUIRE(hm_terms_write(terms, dir.File("terms.tsv").c_str()) == HM_OK);
  CHECK(Read(dir.File("terms.tsv")).find("pig\t3") != std::string::npos);

  hm_label_map* labels = hm_label_map_new();
  REQUIRE(hm_label_map_set(labels, "Spicy", 1) == HM_OK);
  hm_verdicts* verdicts = nullptr;
  const std::string vpath = dir.Write(
      "verdicts.jsonl",
      R"({"key":"pig","model_ids":["a","b","c","d","e"],"labels":["Spicy","Hateful","Offensive","Normal","Normal"]})"
      "\n"
      R"({"key":"women","labels":["Normal","Normal","Normal","Normal","Hateful"]})"
      "\n"
      R"({"key":"always","labels":["Normal","Normal","Normal","Normal","Hateful"]})"
      "\n"
      R"({"key":"broken","labels":["Normal"]})"
      "\n");
  REQUIRE(hm_verdicts_read(vpath.c_str(), labels, &verdicts) == HM_OK);
  CHECK(hm_verdicts_size(verdicts) == 3);
  CHECK(hm_verdicts_error_count(verdicts) == 1);
  int level = -1;
  REQUIRE(hm_verdicts_level(verdicts, "pig", &level) == HM_OK);
  CHECK(level == 3);
  CHECK(hm_verdicts_level(verdicts, "ghost", &level) == HM_ERR_VALIDATION);

  hm_terms* all = nullptr;
  REQUIRE(hm_frequent_terms(corpus, 1, "", 1, &all) == HM_OK);
  hm_strings* selected = nullptr;
  CHECK(hm_select_keywords(all, verdicts, 3, &selected) == HM_ERR_VALIDATION);
  CHECK(std::string(hm_last_error()).find("verdict") != std::string::npos);
  REQUIRE(hm_select_keywords(terms, verdicts, 3, &selected) == HM_OK);
  REQUIRE(hm_strings_size(selected) == 1);
  CHECK(std::string(hm_strings_at(selected, 0)) == "pig");
  CHECK(hm_strings_at(selected, 5) == nullptr);

  hm_strings_free(selected);
  hm_terms_free(all);
  hm_terms_free(terms);
  hm_verdicts_free(verdicts);
  hm_label_map_free(labels);
  hm_corpus_free(corpus);
}

TEST_CASE("candidates, masking and curriculum") {
  TempDir dir;
  hm_candidates* candidates = nullptr;
  const std::string path = dir.Write("cand.jsonl", Candidates({5, 4, 5, 3}));
  REQUIRE(hm_candidates_read(path.c_str(), nullptr, nullptr, &candidates) == HM_OK);
  REQUIRE(hm_candidates_size(candidates) == 4);
  int level = 0;
  REQUIRE(hm_candidates_level(candidates, 1, &level) == HM_OK);
  CHECK(level == 4);

  hm_candidates* top = nullptr;
  REQUIRE(hm_candidates_filter(candidates, 5, &top) == HM_OK);
  CHECK(hm_candidates_size(top) == 2);
  const char* id = nullptr;
  REQUIRE(hm_candidates_id(top, 1, &id) == HM_OK);
  CHECK(std::string(id) == "c2");
  CHECK(hm_candidates_filter(candidates, 6, &top) == HM_ERR_VALIDATION);
  REQUIRE(hm_candidates_write(top, dir.File("top.jsonl").c_str()) == HM_OK);

  const std::string attributions =
      dir.Write("attr.jsonl", "{\"id\":\"c0\",\"scores\":[0.1,0.5]}\n{\"id\":\"c2\",\"scores\":[0.3,0.0]}\n");
  REQUIRE(hm_candidates_attach_attributions(top, attributions.c_str()) == HM_OK);
  hm_mask_stats stats{};
  REQUIRE(hm_candidates_mask(top, 0.1, dir.File("masked.jsonl").c_str(), &stats) == HM_OK);
  CHECK(stats.sentences == 2);
  CHECK(stats.masked_tokens == 2);
  std::string masked = Read(dir.File("masked.jsonl"));
  CHECK(masked.find("word ***") != std::string::npos);
  CHECK(masked.find("*** pig") != std::string::npos);
  // Candidates without scores cannot be masked.
  CHECK(hm_candidates_mask(candidates, 0.1, dir.File("m2.jsonl").c_str(), &stats) ==
        HM_ERR_VALIDATION);

  hm_plan* plan = nullptr;
  REQUIRE(hm_plan_builtin("curriculum-2", &plan) == HM_OK);
  CHECK(hm_plan_stage_count(plan) == 2);
  hm_manifest* manifest = nullptr;
  CHECK(hm_curriculum_build(candidates, plan, 1, HM_SAMPLING_UNIFORM_UNION, &manifest) ==
        HM_ERR_VALIDATION);
  hm_plan_free(plan);

  const std::string plans = dir.Write(
      "plans.json", R"({"small":{"stages":[{"levels":[4],"count":1},{"levels":[5],"count":2}]}})");
  REQUIRE(hm_plan_read(plans.c_str(), "small", &plan) == HM_OK);
  REQUIRE(hm_curriculum_build(candidates, plan, 9, HM_SAMPLING_UNIFORM_UNION, &manifest) ==
          HM_OK);
  CHECK(hm_manifest_stage_count(manifest) == 2);
  std::size_t size = 0;
  REQUIRE(hm_manifest_stage_size(manifest, 1, &size) == HM_OK);
  CHECK(size == 2);
  REQUIRE(hm_manifest_sample_id(manifest, 0, 0, &id) == HM_OK);
  CHECK(std::string(id) == "c1");
  char* json = nullptr;
  REQUIRE(hm_manifest_to_json(manifest, &json) == HM_OK);
  std::string text = Take(json);
  CHECK(text.find("\"plan_name\": \"small\"") != std::string::npos);
  REQUIRE(hm_manifest_write(manifest, dir.File("manifest.json").c_str()) == HM_OK);
  CHECK(Read(dir.File("manifest.json")) == text);
  CHECK(hm_curriculum_build(candidates, plan, 9, static_cast<hm_sampling>(7), &manifest) ==
        HM_ERR_ARGUMENT);
  hm_manifest_free(manifest);
  hm_plan_free(plan);
  CHECK(hm_plan_read(plans.c_str(), "absent", &plan) == HM_ERR_VALIDATION);

  hm_candidates_free(top);
  hm_candidates_free(candidates);
}

TEST_CASE("prompts") {
  hm_prompt_bank* bank = nullptr;
  REQUIRE(hm_prompt_bank_load(nullptr, &bank) == HM_OK);
  CHECK(hm_prompt_bank_size(bank) == 15);
  CHECK(std::string(hm_prompt_bank_entry(bank, 14)) == hm_test_prompt());
  CHECK(hm_prompt_bank_entry(bank, 15) == nullptr);
  std::size_t a = 99, b = 98;
  REQUIRE(hm_prompt_pick(bank, 3, 4, &a) == HM_OK);
  REQUIRE(hm_prompt_pick(bank, 3, 4, &b) == HM_OK);
  CHECK(a == b);
  CHECK(a < 15);
  hm_prompt_bank_free(bank);

  char* out = nullptr;
  REQUIRE(hm_render_generation_prompt("first one", "second one", "vermin", &out) == HM_OK);
  std::string prompt = Take(out);
  CHECK(prompt.find("Mandatory Keyword: vermin") != std::string::npos);
  CHECK(prompt.find("Example 1: first one, Example 2: second one") != std::string::npos);
  CHECK(hm_render_generation_prompt("a", "b", "", &out) == HM_ERR_VALIDATION);

  TempDir dir;
  hm_corpus* corpus = nullptr;
  REQUIRE(hm_corpus_read(dir.Write("corpus.jsonl", kCorpus).c_str(), &corpus) == HM_OK);
  char *target = nullptr, *ex1 = nullptr, *ex2 = nullptr;
  REQUIRE(hm_pick_examples(corpus, nullptr, 3, &target, &ex1, &ex2) == HM_OK);
  CHECK(Take(target) == "Women");
  CHECK(Take(ex1) != Take(ex2));
  CHECK(hm_pick_examples(corpus, "Martians", 3, &target, &ex1, &ex2) == HM_ERR_VALIDATION);
  hm_corpus_free(corpus);
}

TEST_CASE("scoring") {
  hm_eval_result r{};
  REQUIRE(hm_evaluate_pair("you are a *** and always will be *** ***",
                           "you are a *** always will be *** *** ***", &r) == HM_OK);
  CHECK(r.has_mar == 1);
  CHECK(r.mar == 100.0);
  CHECK(r.wer == 20.0);
  CHECK(r.has_umwer == 1);
  CHECK(r.umwer == 100.0 / 7.0);
  CHECK(r.deletions == 1);
  CHECK(r.insertions == 1);
  CHECK(r.unmasked_reference_words == 7);

  const char* ref[] = {"a", "***"};
  const char* hyp[] = {"a", "b"};
  REQUIRE(hm_evaluate_tokens(ref, 2, hyp, 2, &r) == HM_OK);
  CHECK(r.mar == 0.0);
  CHECK(r.substitutions == 1);
  CHECK(hm_evaluate_pair("", "x", &r) == HM_ERR_VALIDATION);

  TempDir dir;
  const std::string input = dir.Write(
      "pairs.jsonl",
      "{\"id\":\"a\",\"ref\":\"x *** y\",\"hyp\":\"x *** y\"}\n"
      "{\"id\":\"b\",\"ref\":\"p q r s\",\"hyp\":\"p q r\"}\n");
  hm_report* report = nullptr;
  REQUIRE(hm_score_read(input.c_str(), HM_AGGREGATION_MICRO, &report) == HM_OK);
  CHECK(hm_report_size(report) == 2);
  const char* id = nullptr;
  REQUIRE(hm_report_result(report, 1, &id, &r) == HM_OK);
  CHECK(std::string(id) == "b");
  CHECK(r.has_mar == 0);
  CHECK(r.wer == 25.0);
  REQUIRE(hm_report_pooled(report, &r) == HM_OK);
  CHECK(r.wer == 100.0 / 7.0);
  CHECK(r.mar == 100.0);
  char* text = nullptr;
  REQUIRE(hm_report_to_table(report, &text) == HM_OK);
  CHECK(Take(text).find("pooled") != std::string::npos);
  REQUIRE(hm_report_to_json(report, &text) == HM_OK);
  CHECK(Take(text).find("\"utterances\"") != std::string::npos);
  hm_report_free(report);

  const std::string dup = dir.Write("dup.jsonl",
                                    "{\"id\":\"a\",\"ref\":\"x\",\"hyp\":\"x\"}\n"
                                    "{\"id\":\"a\",\"ref\":\"y\",\"hyp\":\"y\"}\n");
  CHECK(hm_score_read(dup.c_str(), HM_AGGREGATION_MICRO, &report) == HM_ERR_VALIDATION);
  CHECK(hm_score_read(dir.File("none").c_str(), HM_AGGREGATION_MICRO, &report) == HM_ERR_IO);
}

TEST_CASE("objectives") {
  const double uniform[12] = {0.25, 0.25, 0.25, 0.25, 0.25, 0.25,
                              0.25, 0.25, 0.25, 0.25, 0.25, 0.25};
  const std::size_t targets[3] = {0, 1, 2};
  double v = 0.0;
  REQUIRE(hm_cross_entropy(uniform, 3, 4, targets, &v) == HM_OK);
  CHECK(std::abs(v - 3 * std::log(4.0)) < 1e-12);
  const std::size_t bad_targets[3] = {0, 1, 4};
  CHECK(hm_cross_entropy(uniform, 3, 4, bad_targets, &v) == HM_ERR_VALIDATION);

  const double p[2] = {0.5, 0.5}, q[2] = {0.25, 0.75};
  REQUIRE(hm_kl_divergence(p, q, 1, 2, &v) == HM_OK);
  CHECK(std::abs(v - 0.5 * std::log(4.0 / 3.0)) < 1e-12);
  const double not_normalized[2] = {0.5, 0.6};
  CHECK(hm_kl_divergence(not_normalized, q, 1, 2, &v) == HM_ERR_VALIDATION);

  const double logits[3] = {1.0, 1.0, 1.0};
  double probs[3];
  REQUIRE(hm_softmax(logits, 3, probs) == HM_OK);
  CHECK(std::abs(probs[0] - 1.0 / 3.0) < 1e-15);

  hm_gradcheck_report g{};
  REQUIRE(hm_check_gradients(0, 20, 3, 5, 1e-5, &g) == HM_OK);
  CHECK(g.trials == 20);
  CHECK(g.cross_entropy_max_error < 1e-4);
  CHECK(g.kl_max_error < 1e-4);
  CHECK(hm_check_gradients(0, 1, 3, 5, 0.0, &g) == HM_ERR_VALIDATION);
}
