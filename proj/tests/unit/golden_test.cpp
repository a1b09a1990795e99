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

#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hatemask/metrics.hpp"
#include "json.hpp"
#include "support/oracles.hpp"

#ifndef HATEMASK_TEST_DATA
#error "HATEMASK_TEST_DATA must point at tests/data"
#endif

namespace {

std::string Slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> Split(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

TEST_CASE("golden fixture: frozen counts still match the oracle") {
  auto expected = nlohmann::json::parse(Slurp(HATEMASK_TEST_DATA "/golden_expected.json"));
  std::istringstream pairs(Slurp(HATEMASK_TEST_DATA "/golden_pairs.jsonl"));
  std::size_t row = 0;
  for (std::string line; std::getline(pairs, line);) {
    if (line.empty()) continue;
    auto obj = nlohmann::json::parse(line);
    auto c = oracle::ScorePair(Split(obj["ref"]), Split(obj["hyp"]));
    const auto& e = expected["utterances"][row++];
    CHECK(e["id"] == obj["id"]);
    CHECK(e["insertions"] == c.i);
    CHECK(e["substitutions"] == c.s);
    CHECK(e["deletions"] == c.d);
    CHECK(e["masks_matched"] == c.masks_matched);
    CHECK(e["unmasked_insertions"] == c.ui);
  }
  CHECK(row == 20);
}

TEST_CASE("golden fixture: library per-utterance counts") {
  auto expected = nlohmann::json::parse(Slurp(HATEMASK_TEST_DATA "/golden_expected.json"));
  std::istringstream in(Slurp(HATEMASK_TEST_DATA "/golden_pairs.jsonl"));
  auto report = hatemask::metrics::EvaluateCorpus(hatemask::metrics::ParseScoringInput(in));
  REQUIRE(report.per_utterance.size() == 20);
  for (std::size_t i = 0; i < 20; ++i) {
    const auto& e = expected["utterances"][i];
    const auto& [id, r] = report.per_utterance[i];
    INFO(id);
    CHECK(e["id"] == id);
    CHECK(e["masks_total"] == r.masks_total);
    CHECK(e["masks_matched"] == r.masks_matched);
    CHECK(e["insertions"] == r.full.insertions);
    CHECK(e["substitutions"] == r.full.substitutions);
    CHECK(e["deletions"] == r.full.deletions);
    CHECK(e["reference_words"] == r.full.reference_words);
    CHECK(e["unmasked_insertions"] == r.unmasked.insertions);
    CHECK(e["unmasked_substitutions"] == r.unmasked.substitutions);
    CHECK(e["unmasked_deletions"] == r.unmasked.deletions);
    CHECK(e["unmasked_reference_words"] == r.unmasked.reference_words);
  }
}
