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

// Randomized property checks. Every generator is seeded so failures replay.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "hatemask/corpus.hpp"
#include "hatemask/curation.hpp"
#include "hatemask/metrics.hpp"
#include "hatemask/objectives.hpp"
#include "hatemask/prompts.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace hatemask;

namespace {

corpus::UtteranceRecord RandomRecord(gen::Rng& rng, int n) {
  corpus::UtteranceRecord r;
  r.id = "id-" + std::to_string(n);
  r.tokens = gen::Words(rng, 1 + gen::Below(rng, 8), 6);
  r.rationale_votes = gen::Votes(rng, r.tokens.size());
  for (auto& l : r.annotator_labels) l = static_cast<corpus::AnnotatorLabel>(gen::Below(rng, 4));
  if (gen::Below(rng, 2)) r.target = gen::Below(rng, 2) ? "Women" : "African";
  r.source = gen::Below(rng, 2) ? corpus::Source::kOriginal : corpus::Source::kGenerated;
  return r;
}

std::set<std::size_t> AsSet(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("masked positions are exactly the tokens at or above the vote threshold") {
  gen::Rng rng(101);
  for (int trial = 0; trial < 2000; ++trial) {
    auto r = RandomRecord(rng, trial);
    for (int threshold = 1; threshold <= 3; ++threshold) {
      auto m = corpus::BuildMaskedReference(r, threshold);
      std::vector<std::size_t> expected;
      for (std::size_t i = 0; i < r.tokens.size(); ++i) {
        if (r.rationale_votes[i] >= threshold) expected.push_back(i);
      }
      REQUIRE(m.mask_positions == expected);
      for (std::size_t i = 0; i < m.tokens.size(); ++i) {
        bool masked = std::binary_search(expected.begin(), expected.end(), i);
        REQUIRE(IsMask(m.tokens[i]) == masked);
        if (!masked) REQUIRE(m.tokens[i] == r.tokens[i]);
      }
    }
  }
}

TEST_CASE("raising the vote threshold never grows the mask set") {
  gen::Rng rng(102);
  for (int trial = 0; trial < 2000; ++trial) {
    auto r = RandomRecord(rng, trial);
    auto lo = AsSet(corpus::BuildMaskedReference(r, 1).mask_positions);
    auto mid = AsSet(corpus::BuildMaskedReference(r, 2).mask_positions);
    auto hi = AsSet(corpus::BuildMaskedReference(r, 3).mask_positions);
    REQUIRE(std::includes(lo.begin(), lo.end(), mid.begin(), mid.end()));
    REQUIRE(std::includes(mid.begin(), mid.end(), hi.begin(), hi.end()));
  }
}

TEST_CASE("masking is idempotent when masks carry no votes") {
  gen::Rng rng(103);
  for (int trial = 0; trial < 2000; ++trial) {
    auto r = RandomRecord(rng, trial);
    auto once = corpus::BuildMaskedReference(r, 2);
    corpus::UtteranceRecord again = r;
    again.tokens = once.tokens;
    for (std::size_t i = 0; i < again.tokens.size(); ++i) {
      if (IsMask(again.tokens[i])) again.rationale_votes[i] = 0;
    }
    REQUIRE(corpus::BuildMaskedReference(again, 2) == once);
  }
}

TEST_CASE("parse after serialize is the identity on valid records") {
  gen::Rng rng(104);
  std::string stream;
  std::vector<corpus::UtteranceRecord> records;
  for (int trial = 0; trial < 500; ++trial) {
    records.push_back(RandomRecord(rng, trial));
    stream += corpus::Serialize(records.back()) + "\n";
  }
  std::istringstream in(stream);
  auto parsed = corpus::ParseCorpus(in);
  CHECK(parsed.errors.empty());
  REQUIRE(parsed.records.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) REQUIRE(parsed.records[i] == records[i]);
}

TEST_CASE("hate level counts hateful labels for every verdict") {
  for (unsigned mask = 0; mask < 32; ++mask) {
    std::array<curation::ClassifierLabel, 5> labels{};
    int expected = 0;
    for (int k = 0; k < 5; ++k) {
      bool h = (mask >> k) & 1u;
      labels[k] = h ? curation::ClassifierLabel::kHateful : curation::ClassifierLabel::kNormal;
      expected += h;
    }
    REQUIRE(curation::AssignHateLevel(curation::EnsembleVerdict::FromLabels(labels)) == expected);
  }
}

TEST_CASE("attribution masking is antitone in the threshold") {
  gen::Rng rng(105);
  for (int trial = 0; trial < 2000; ++trial) {
    auto tokens = gen::Words(rng, 1 + gen::Below(rng, 10), 5);
    std::vector<double> scores(tokens.size());
    for (auto& s : scores) s = gen::Unit(rng) * 0.4;
    double a = gen::Unit(rng) * 0.4, b = gen::Unit(rng) * 0.4;
    if (a > b) std::swap(a, b);
    auto low = AsSet(curation::MaskByAttribution(tokens, scores, a).mask_positions);
    auto high = AsSet(curation::MaskByAttribution(tokens, scores, b).mask_positions);
    REQUIRE(std::includes(low.begin(), low.end(), high.begin(), high.end()));
  }
}

TEST_CASE("curriculum manifests are disjoint, level-consistent and seed-stable") {
  gen::Rng rng(106);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<curation::CandidateRecord> pool;
    std::map<std::string, int> level;
    const std::size_t size = 50 + gen::Below(rng, 100);
    for (std::size_t i = 0; i < size; ++i) {
      curation::CandidateRecord c;
      c.id = "c" + std::to_string(i);
      c.tokens = {"x"};
      c.mandatory_keyword = "x";
      std::array<curation::ClassifierLabel, 5> labels{};
      int h = 0;
      for (auto& l : labels) {
        bool hateful = gen::Below(rng, 3) > 0;
        l = hateful ? curation::ClassifierLabel::kHateful : curation::ClassifierLabel::kNormal;
        h += hateful;
      }
      c.verdict = curation::EnsembleVerdict::FromLabels(labels);
      c.hate_level = h;
      level[c.id] = h;
      pool.push_back(c);
    }
    std::map<int, std::size_t> available;
    for (auto& [id, l] : level) ++available[l];
    // Stages with overlapping level sets, counts chosen so every plan is
    // satisfiable whatever the mixed stage happens to draw.
    auto some = [&](std::size_t n) { return 1 + gen::Below(rng, n); };
    curation::CurriculumPlan plan{"p", {}};
    std::size_t low = available[0] + available[1] + available[2];
    if (low > 0) plan.stages.push_back({{0, 1, 2}, some(low)});
    if (available[3] > 0) plan.stages.push_back({{3}, some(available[3])});
    if (available[5] >= 2) {
      std::size_t mixed = some(available[5] / 2);
      plan.stages.push_back({{3, 4, 5}, mixed});
      plan.stages.push_back({{5}, some(available[5] - mixed)});
    }
    if (plan.stages.empty()) continue;
    for (auto sampling : {curation::MixedSampling::kUniformUnion,
                          curation::MixedSampling::kBalancedLevels}) {
      const std::uint64_t seed = rng();
      curation::CurriculumManifest m;
      try {
        m = curation::BuildCurriculum(pool, plan, seed, sampling);
      } catch (const ValidationError&) {
        // Balanced splits can ask more of one level than it holds.
        REQUIRE(sampling == curation::MixedSampling::kBalancedLevels);
        continue;
      }
      std::set<std::string> seen;
      for (std::size_t s = 0; s < m.stages.size(); ++s) {
        REQUIRE(m.stages[s].sample_ids.size() == plan.stages[s].count);
        for (const auto& id : m.stages[s].sample_ids) {
          REQUIRE(seen.insert(id).second);
          REQUIRE(m.stages[s].level_set.count(level.at(id)) == 1);
        }
      }
      REQUIRE(curation::ManifestToJson(curation::BuildCurriculum(pool, plan, seed, sampling)) ==
              curation::ManifestToJson(m));
    }
  }
}

TEST_CASE("alignment matches exhaustive search on random sequences") {
  gen::Rng rng(107);
  for (int trial = 0; trial < 3000; ++trial) {
    auto ref = gen::Words(rng, gen::Below(rng, 8), 4);
    auto hyp = gen::Words(rng, gen::Below(rng, 8), 4);
    for (auto* seq : {&ref, &hyp}) {
      for (auto& t : *seq) {
        if (gen::Below(rng, 4) == 0) t = "***";
      }
    }
    auto a = metrics::Align(ref, hyp);
    auto b = oracle::BruteAlign(ref, hyp);
    REQUIRE(a.counts.errors() == b.cost);
    REQUIRE(a.counts.insertions == b.insertions);
    REQUIRE(a.counts.substitutions == b.substitutions);
    REQUIRE(a.counts.deletions == b.deletions);
    // Same op sequence, not just the same cost.
    REQUIRE(a.ops.size() == b.backward.size());
    for (std::size_t k = 0; k < a.ops.size(); ++k) {
      auto op = a.ops[a.ops.size() - 1 - k].op;
      auto step = b.backward[k];
      bool diag = op == metrics::EditOp::kMatch || op == metrics::EditOp::kSubstitute;
      REQUIRE(diag == (step == oracle::Step::kDiag));
      REQUIRE((op == metrics::EditOp::kDelete) == (step == oracle::Step::kDelete));
    }
    // Every index appears exactly once.
    std::vector<int> rseen(ref.size()), hseen(hyp.size());
    for (const auto& p : a.ops) {
      if (p.ref_index) ++rseen[*p.ref_index];
      if (p.hyp_index) ++hseen[*p.hyp_index];
      REQUIRE(p.ref_index.has_value() == (p.op != metrics::EditOp::kInsert));
      REQUIRE(p.hyp_index.has_value() == (p.op != metrics::EditOp::kDelete));
    }
    for (int c : rseen) REQUIRE(c == 1);
    for (int c : hseen) REQUIRE(c == 1);
    REQUIRE(metrics::Align(ref, hyp).ops == a.ops);
  }
}

TEST_CASE("metric identities and bounds") {
  gen::Rng rng(108);
  for (int trial = 0; trial < 2000; ++trial) {
    auto ref = corpus::MaskedSentence::FromTokens(gen::MaskedReference(rng, 12, 6));
    REQUIRE(metrics::Wer(ref, ref.tokens) == 0.0);
    REQUIRE(metrics::Mar(ref, ref.tokens) == 100.0);
    REQUIRE(metrics::Umwer(ref, ref.tokens) == 0.0);

    auto hyp = gen::Words(rng, gen::Below(rng, 15), 6);
    for (auto& t : hyp) {
      if (gen::Below(rng, 3) == 0) t = "***";
    }
    auto r = metrics::Evaluate(ref, hyp);
    REQUIRE(r.mar.has_value());
    REQUIRE(*r.mar >= 0.0);
    REQUIRE(*r.mar <= 100.0);
    REQUIRE(r.wer >= 0.0);
    auto expected = oracle::ScorePair(ref.tokens, hyp);
    REQUIRE(r.masks_matched == expected.masks_matched);
    REQUIRE(r.unmasked.errors() == expected.ui + expected.us + expected.ud);
  }
}

TEST_CASE("umwer ignores inserted masks and wer does not") {
  gen::Rng rng(109);
  for (int trial = 0; trial < 2000; ++trial) {
    auto ref = corpus::MaskedSentence::FromTokens(gen::MaskedReference(rng, 12, 6));
    auto hyp = gen::Words(rng, 1 + gen::Below(rng, 12), 6);
    const double before = metrics::Umwer(ref, hyp);
    auto perfect = ref.tokens;
    const std::size_t k = 1 + gen::Below(rng, 10);
    for (std::size_t i = 0; i < k; ++i) {
      gen::InsertAt(rng, hyp, "***");
      gen::InsertAt(rng, perfect, "***");
    }
    REQUIRE(metrics::Umwer(ref, hyp) == before);
    REQUIRE(metrics::Umwer(ref, perfect) == 0.0);
    REQUIRE(metrics::Wer(ref, perfect) > 0.0);
  }
}

TEST_CASE("an unseen word strictly raises wer of a perfect hypothesis") {
  gen::Rng rng(110);
  for (int trial = 0; trial < 2000; ++trial) {
    auto ref = corpus::MaskedSentence::FromTokens(gen::MaskedReference(rng, 12, 6));
    auto hyp = ref.tokens;
    gen::InsertAt(rng, hyp, "unseen");
    REQUIRE(metrics::Wer(ref, hyp) > 0.0);
  }
}

TEST_CASE("pooled counts equal per-utterance sums in any order") {
  gen::Rng rng(111);
  std::vector<metrics::ScoringPair> pairs;
  for (int i = 0; i < 200; ++i) {
    pairs.push_back({"u" + std::to_string(i),
                     corpus::MaskedSentence::FromTokens(gen::MaskedReference(rng, 10, 5)),
                     gen::Words(rng, gen::Below(rng, 12), 5)});
  }
  auto forward = metrics::EvaluateCorpus(pairs);
  metrics::ErrorCounts full, unmasked;
  std::size_t masks = 0;
  for (const auto& [id, r] : forward.per_utterance) {
    full += r.full;
    unmasked += r.unmasked;
    masks += r.masks_total;
  }
  CHECK(forward.pooled.full == full);
  CHECK(forward.pooled.unmasked == unmasked);
  CHECK(forward.pooled.masks_total == masks);
  std::reverse(pairs.begin(), pairs.end());
  auto backward = metrics::EvaluateCorpus(pairs);
  CHECK(backward.pooled.wer == forward.pooled.wer);
  CHECK(backward.pooled.mar == forward.pooled.mar);
  CHECK(backward.pooled.umwer == forward.pooled.umwer);
}

TEST_CASE("kl divergence is non-negative and zero only on equal inputs") {
  gen::Rng rng(112);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t v = 2 + gen::Below(rng, 7);
    auto p = gen::Simplex(rng, v), q = gen::Simplex(rng, v);
    std::vector<objectives::StepDistribution> a{objectives::StepDistribution(p)};
    std::vector<objectives::StepDistribution> b{objectives::StepDistribution(q)};
    double kl = objectives::KlDivergence(a, b);
    REQUIRE(kl >= 0.0);
    REQUIRE(std::abs(kl - oracle::Kl(p, q)) < 1e-12);
    REQUIRE(objectives::KlDivergence(a, a) < 1e-12);
    bool equal = true;
    for (std::size_t k = 0; k < v; ++k) equal = equal && std::abs(p[k] - q[k]) <= 1e-9;
    if (!equal) REQUIRE(kl > 1e-12);
  }
}

TEST_CASE("losses are additive over time steps and cross entropy is non-negative") {
  gen::Rng rng(113);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t v = 2 + gen::Below(rng, 5);
    const std::size_t t1 = 1 + gen::Below(rng, 4), t2 = 1 + gen::Below(rng, 4);
    objectives::ObjectiveInput all{"x", {}, {}}, first{"x", {}, {}}, second{"x", {}, {}};
    std::vector<objectives::StepDistribution> old_all, old_first, old_second;
    for (std::size_t t = 0; t < t1 + t2; ++t) {
      objectives::StepDistribution p(gen::Simplex(rng, v)), q(gen::Simplex(rng, v));
      std::size_t y = gen::Below(rng, v);
      all.step_distributions.push_back(p);
      all.targets.push_back(y);
      old_all.push_back(q);
      auto& part = t < t1 ? first : second;
      part.step_distributions.push_back(p);
      part.targets.push_back(y);
      (t < t1 ? old_first : old_second).push_back(q);
    }
    double ce = objectives::CrossEntropy(all);
    REQUIRE(ce > 0.0);
    REQUIRE(std::abs(ce - objectives::CrossEntropy(first) - objectives::CrossEntropy(second)) <
            1e-12);
    double kl = objectives::KlDivergence(all.step_distributions, old_all);
    double parts = objectives::KlDivergence(first.step_distributions, old_first) +
                   objectives::KlDivergence(second.step_distributions, old_second);
    REQUIRE(std::abs(kl - parts) < 1e-12);
  }
}

TEST_CASE("rendered prompts always carry the keyword once") {
  gen::Rng rng(114);
  for (int trial = 0; trial < 500; ++trial) {
    std::string kw = "kw" + std::to_string(rng() % 100000) + "zz";
    std::string out = prompts::RenderGenerationPrompt({"first", "second", kw, "Women"});
    REQUIRE(out.find("Mandatory Keyword: " + kw) != std::string::npos);
    REQUIRE(out.find(kw) == out.rfind(kw));
    for (const auto& step : prompts::GenerationSteps()) {
      auto head = step.substr(0, step.find('['));
      REQUIRE(out.find(head) != std::string::npos);
    }
  }
}
