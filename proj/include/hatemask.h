/* Copyright 2026 The Hatemask Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the hatemask curation and scoring library.
 *
 * Every fallible call returns an hm_status. On failure a description is
 * available from hm_last_error() until the next call on the same thread.
 * Objects are opaque handles released with their matching *_free call.
 * Strings returned through `char**` are owned by the caller and released
 * with hm_string_free; `const char**` results borrow from their handle. */
#ifndef HATEMASK_H_
#define HATEMASK_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HATEMASK_BUILDING)
#    define HM_API __declspec(dllexport)
#  else
#    define HM_API __declspec(dllimport)
#  endif
#else
#  define HM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hm_status {
  HM_OK = 0,
  HM_ERR_VALIDATION = 1, /* input broke a documented contract */
  HM_ERR_IO = 2,         /* file could not be read or written */
  HM_ERR_ARGUMENT = 3,   /* null handle, index out of range, bad enum */
  HM_ERR_INTERNAL = 4
} hm_status;

HM_API const char* hm_version(void);
HM_API const char* hm_last_error(void);
HM_API void hm_string_free(char* s);

/* The literal masking token, "***". */
HM_API const char* hm_mask_token(void);

/* Hashes every non-mask token of `text` for logging. */
HM_API hm_status hm_redact(const char* text, char** out);

/* Tokenizes `text` (NFC, lowercase, whitespace split, edge punctuation
 * stripped, "***" kept) and returns the tokens joined by single spaces. */
HM_API hm_status hm_tokenize(const char* text, char** out);

/* ---- string lists -------------------------------------------------------- */

typedef struct hm_strings hm_strings;

HM_API size_t hm_strings_size(const hm_strings* list);
HM_API const char* hm_strings_at(const hm_strings* list, size_t index);
/* One entry per line. */
HM_API hm_status hm_strings_write(const hm_strings* list, const char* path);
HM_API void hm_strings_free(hm_strings* list);

/* ---- corpus -------------------------------------------------------------- */

typedef struct hm_corpus hm_corpus;

/* Malformed records do not fail the call; they are listed through
 * hm_corpus_error. Only I/O problems fail. */
HM_API hm_status hm_corpus_read(const char* path, hm_corpus** out);
HM_API hm_status hm_corpus_parse(const char* data, size_t size, hm_corpus** out);
HM_API void hm_corpus_free(hm_corpus* corpus);

HM_API size_t hm_corpus_size(const hm_corpus* corpus);
HM_API size_t hm_corpus_error_count(const hm_corpus* corpus);
HM_API hm_status hm_corpus_error(const hm_corpus* corpus, size_t index, size_t* line,
                                 const char** message);
HM_API hm_status hm_corpus_record_id(const hm_corpus* corpus, size_t index, const char** id);
HM_API hm_status hm_corpus_is_unanimous_hateful(const hm_corpus* corpus, size_t index,
                                                int* result);

typedef struct hm_ingest_options {
  int vote_threshold;         /* 1..3, default 2 */
  const char* overrides_path; /* "+id"/"-id" lines, or NULL */
  const char* patterns_path;  /* one regex per line replacing the defaults, or NULL */
} hm_ingest_options;

typedef struct hm_ingest_stats {
  size_t records;
  size_t unanimous_hateful;
  size_t kept;
  size_t dropped_by_prefilter;
  size_t masked_tokens;
} hm_ingest_stats;

HM_API void hm_ingest_options_init(hm_ingest_options* options);

/* Unanimously hateful records that pass the symbol prefilter are masked by
 * annotator votes and written as JSON lines to `out_path`. */
HM_API hm_status hm_corpus_ingest(const hm_corpus* corpus, const hm_ingest_options* options,
                                  const char* out_path, hm_ingest_stats* stats);

/* ---- keyword selection --------------------------------------------------- */

typedef struct hm_terms hm_terms;

/* Frequent terms of the unanimously hateful records (all records when
 * `hateful_only` is 0). `stoplist_path` NULL selects the built-in list;
 * an empty string disables the stop-list. */
HM_API hm_status hm_frequent_terms(const hm_corpus* corpus, int min_count,
                                   const char* stoplist_path, int hateful_only, hm_terms** out);
HM_API size_t hm_terms_size(const hm_terms* terms);
HM_API hm_status hm_terms_at(const hm_terms* terms, size_t index, const char** term,
                             size_t* count);
/* "term<TAB>count" lines. */
HM_API hm_status hm_terms_write(const hm_terms* terms, const char* path);
HM_API void hm_terms_free(hm_terms* terms);

typedef struct hm_label_map hm_label_map;

/* Starts from the default mapping ("offensive" counts as hateful). */
HM_API hm_label_map* hm_label_map_new(void);
HM_API hm_status hm_label_map_set(hm_label_map* map, const char* raw_label, int hateful);
HM_API void hm_label_map_free(hm_label_map* map);

typedef struct hm_verdicts hm_verdicts;

/* `labels` may be NULL for the default mapping. Malformed lines are listed
 * through hm_verdicts_error. */
HM_API hm_status hm_verdicts_read(const char* path, const hm_label_map* labels,
                                  hm_verdicts** out);
HM_API size_t hm_verdicts_size(const hm_verdicts* verdicts);
HM_API size_t hm_verdicts_error_count(const hm_verdicts* verdicts);
HM_API hm_status hm_verdicts_error(const hm_verdicts* verdicts, size_t index, size_t* line,
                                   const char** message);
/* Hate level (Hateful votes) recorded for `key`; HM_ERR_VALIDATION when absent. */
HM_API hm_status hm_verdicts_level(const hm_verdicts* verdicts, const char* key, int* level);
HM_API void hm_verdicts_free(hm_verdicts* verdicts);

HM_API hm_status hm_select_keywords(const hm_terms* terms, const hm_verdicts* verdicts,
                                    int vote_threshold, hm_strings** out);

/* ---- candidates ---------------------------------------------------------- */

typedef struct hm_candidates hm_candidates;

/* `verdicts` supplies labels for lines without inline "labels"; may be
 * NULL. Malformed lines are listed through hm_candidates_error. */
HM_API hm_status hm_candidates_read(const char* path, const hm_verdicts* verdicts,
                                    const hm_label_map* labels, hm_candidates** out);
HM_API void hm_candidates_free(hm_candidates* candidates);
HM_API size_t hm_candidates_size(const hm_candidates* candidates);
HM_API size_t hm_candidates_error_count(const hm_candidates* candidates);
HM_API hm_status hm_candidates_error(const hm_candidates* candidates, size_t index,
                                     size_t* line, const char** message);
/* Candidates whose text lacks their mandatory keyword. `text` is the
 * tokenized sentence. */
HM_API size_t hm_candidates_warning_count(const hm_candidates* candidates);
HM_API hm_status hm_candidates_warning(const hm_candidates* candidates, size_t index,
                                       const char** id, const char** keyword,
                                       const char** text);
HM_API hm_status hm_candidates_id(const hm_candidates* candidates, size_t index,
                                  const char** id);
HM_API hm_status hm_candidates_level(const hm_candidates* candidates, size_t index, int* level);

HM_API hm_status hm_candidates_filter(const hm_candidates* candidates, int min_level,
                                      hm_candidates** out);
HM_API hm_status hm_candidates_write(const hm_candidates* candidates, const char* path);

/* Attaches per-token scores from {"id", "scores"} lines, replacing inline
 * ones. Ids without a candidate are ignored. */
HM_API hm_status hm_candidates_attach_attributions(hm_candidates* candidates, const char* path);

typedef struct hm_mask_stats {
  size_t sentences;
  size_t masked_tokens;
} hm_mask_stats;

/* Masks tokens whose attribution score exceeds `threshold` and writes masked
 * references as JSON lines. Fails if any candidate lacks scores. */
HM_API hm_status hm_candidates_mask(const hm_candidates* candidates, double threshold,
                                    const char* out_path, hm_mask_stats* stats);

/* ---- curriculum ---------------------------------------------------------- */

typedef struct hm_plan hm_plan;

HM_API hm_status hm_plan_builtin(const char* name, hm_plan** out);
/* Named plan from a plan file. */
HM_API hm_status hm_plan_read(const char* path, const char* name, hm_plan** out);
HM_API size_t hm_plan_stage_count(const hm_plan* plan);
HM_API void hm_plan_free(hm_plan* plan);

typedef enum hm_sampling {
  HM_SAMPLING_UNIFORM_UNION = 0,
  HM_SAMPLING_BALANCED_LEVELS = 1
} hm_sampling;

typedef struct hm_manifest hm_manifest;

HM_API hm_status hm_curriculum_build(const hm_candidates* candidates, const hm_plan* plan,
                                     uint64_t seed, hm_sampling sampling, hm_manifest** out);
HM_API size_t hm_manifest_stage_count(const hm_manifest* manifest);
HM_API hm_status hm_manifest_stage_size(const hm_manifest* manifest, size_t stage,
                                        size_t* size);
HM_API hm_status hm_manifest_sample_id(const hm_manifest* manifest, size_t stage, size_t index,
                                       const char** id);
HM_API hm_status hm_manifest_to_json(const hm_manifest* manifest, char** out);
HM_API hm_status hm_manifest_write(const hm_manifest* manifest, const char* path);
HM_API void hm_manifest_free(hm_manifest* manifest);

/* ---- prompts ------------------------------------------------------------- */

typedef struct hm_prompt_bank hm_prompt_bank;

/* `path` NULL loads the built-in bank. */
HM_API hm_status hm_prompt_bank_load(const char* path, hm_prompt_bank** out);
HM_API size_t hm_prompt_bank_size(const hm_prompt_bank* bank);
HM_API const char* hm_prompt_bank_entry(const hm_prompt_bank* bank, size_t index);
/* Seeded uniform choice; `index` is 0-based. */
HM_API hm_status hm_prompt_pick(const hm_prompt_bank* bank, uint64_t sample_index,
                                uint64_t seed, size_t* index);
HM_API void hm_prompt_bank_free(hm_prompt_bank* bank);

HM_API const char* hm_test_prompt(void);

HM_API hm_status hm_render_generation_prompt(const char* example_1, const char* example_2,
                                             const char* keyword, char** out);

/* Two distinct unanimously hateful records sharing a target. `target` NULL
 * or "" lets the seed choose a target. */
HM_API hm_status hm_pick_examples(const hm_corpus* corpus, const char* target, uint64_t seed,
                                  char** chosen_target, char** example_1, char** example_2);

/* ---- scoring ------------------------------------------------------------- */

typedef struct hm_eval_result {
  int has_mar;
  double mar;
  double wer;
  int has_umwer;
  double umwer;
  size_t insertions;
  size_t substitutions;
  size_t deletions;
  size_t reference_words;
  size_t unmasked_insertions;
  size_t unmasked_substitutions;
  size_t unmasked_deletions;
  size_t unmasked_reference_words;
  size_t masks_total;
  size_t masks_matched;
} hm_eval_result;

/* `ref` is masked reference text; both sides are tokenized. */
HM_API hm_status hm_evaluate_pair(const char* ref, const char* hyp, hm_eval_result* out);
/* Pre-tokenized variant. */
HM_API hm_status hm_evaluate_tokens(const char* const* ref, size_t ref_size,
                                    const char* const* hyp, size_t hyp_size,
                                    hm_eval_result* out);

typedef enum hm_aggregation { HM_AGGREGATION_MICRO = 0, HM_AGGREGATION_MACRO = 1 } hm_aggregation;

typedef struct hm_report hm_report;

/* {"id", "ref", "hyp"} lines. */
HM_API hm_status hm_score_read(const char* path, hm_aggregation aggregation, hm_report** out);
HM_API size_t hm_report_size(const hm_report* report);
HM_API hm_status hm_report_result(const hm_report* report, size_t index, const char** id,
                                  hm_eval_result* out);
HM_API hm_status hm_report_pooled(const hm_report* report, hm_eval_result* out);
HM_API hm_status hm_report_to_json(const hm_report* report, char** out);
HM_API hm_status hm_report_to_table(const hm_report* report, char** out);
HM_API void hm_report_free(hm_report* report);

/* ---- objectives ---------------------------------------------------------- */

/* Distributions are row-major steps x vocab. */
HM_API hm_status hm_cross_entropy(const double* probabilities, size_t steps, size_t vocab,
                                  const size_t* targets, double* out);
HM_API hm_status hm_kl_divergence(const double* adapted, const double* reference,
                                  size_t steps, size_t vocab, double* out);
HM_API hm_status hm_softmax(const double* logits, size_t size, double* out);

typedef struct hm_gradcheck_report {
  size_t trials;
  double cross_entropy_max_error;
  double kl_max_error;
} hm_gradcheck_report;

HM_API hm_status hm_check_gradients(uint64_t seed, size_t trials, size_t steps, size_t vocab,
                                    double eps, hm_gradcheck_report* out);

#ifdef __cplusplus
}
#endif

#endif /* HATEMASK_H_ */
