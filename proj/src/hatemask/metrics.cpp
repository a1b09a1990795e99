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

#include "hatemask/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <unordered_set>

#include "hatemask/io.hpp"
#include "hatemask/text.hpp"
#include "json.hpp"

namespace hatemask::metrics {

using json = nlohmann::ordered_json;

std::string_view ToString(EditOp op) {
  switch (op) {
    case EditOp::kMatch: return "match";
    case EditOp::kSubstitute: return "substitute";
    case EditOp::kInsert: return "insert";
    case EditOp::kDelete: return "delete";
  }
  return "?";
}

Alignment Align(std::span<const std::string> ref, std::span<const std::string> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t width = m + 1;
  std::vector<std::size_t> cost((n + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return cost[i * width + j]; };

  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    at(i, 0) = i;
    for (std::size_t j = 1; j <= m; ++j) {
      std::size_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  Alignment out;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        out.ops.push_back({same ? EditOp::kMatch : EditOp::kSubstitute, i - 1, j - 1});
        if (!same) ++out.counts.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      out.ops.push_back({EditOp::kDelete, i - 1, std::nullopt});
      ++out.counts.deletions;
      --i;
      continue;
    }
    out.ops.push_back({EditOp::kInsert, std::nullopt, j - 1});
    ++out.counts.insertions;
    --j;
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

Tokens Tokenize(std::string_view text) { return text::Tokenize(text); }

MaskedSentence ReferenceFromText(std::string_view text, std::string id) {
  return MaskedSentence::FromTokens(Tokenize(text), std::move(id));
}

namespace {

Tokens StripMasks(std::span<const std::string> tokens) {
  Tokens out;
  for (const auto& t : tokens) {
    if (!IsMask(t)) out.push_back(t);
  }
  return out;
}

double Percent(std::size_t num, std::size_t den) {
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

std::size_t CountMatchedMasks(const Alignment& alignment, std::span<const std::string> ref) {
  std::size_t matched = 0;
  for (const auto& p : alignment.ops) {
    if (p.op == EditOp::kMatch && IsMask(ref[*p.ref_index])) ++matched;
  }
  return matched;
}

ErrorCounts ToErrorCounts(const EditCounts& c, std::size_t n) {
  return {c.insertions, c.substitutions, c.deletions, n};
}

}  // namespace

std::optional<double> Mar(const MaskedSentence& ref, std::span<const std::string> hyp) {
  if (ref.mask_positions.empty()) return std::nullopt;
  Alignment a = Align(ref.tokens, hyp);
  return Percent(CountMatchedMasks(a, ref.tokens), ref.mask_positions.size());
}

double Wer(const MaskedSentence& ref, std::span<const std::string> hyp) {
  if (ref.tokens.empty()) throw ValidationError("WER of an empty reference is undefined");
  return Percent(Align(ref.tokens, hyp).counts.errors(), ref.tokens.size());
}

double Umwer(const MaskedSentence& ref, std::span<const std::string> hyp) {
  Tokens r = StripMasks(ref.tokens);
  if (r.empty()) throw ValidationError("UMWER of a reference without unmasked words is undefined");
  Tokens h = StripMasks(hyp);
  return Percent(Align(r, h).counts.errors(), r.size());
}

ErrorCounts& ErrorCounts::operator+=(const ErrorCounts& o) {
  insertions += o.insertions;
  substitutions += o.substitutions;
  deletions += o.deletions;
  reference_words += o.reference_words;
  return *this;
}

EvalResult Evaluate(const MaskedSentence& ref, std::span<const std::string> hyp) {
  if (ref.tokens.empty()) throw ValidationError("empty reference");
  EvalResult r;
  Alignment full = Align(ref.tokens, hyp);
  r.full = ToErrorCounts(full.counts, ref.tokens.size());
  r.masks_total = static_cast<std::size_t>(
      std::count_if(ref.tokens.begin(), ref.tokens.end(), [](const auto& t) { return IsMask(t); }));
  r.masks_matched = CountMatchedMasks(full, ref.tokens);
  if (r.masks_total > 0) r.mar = Percent(r.masks_matched, r.masks_total);
  r.wer = Percent(r.full.errors(), r.full.reference_words);

  Tokens ref_words = StripMasks(ref.tokens);
  Tokens hyp_words = StripMasks(hyp);
  r.unmasked = ToErrorCounts(Align(ref_words, hyp_words).counts, ref_words.size());
  if (!ref_words.empty()) r.umwer = Percent(r.unmasked.errors(), ref_words.size());
  return r;
}

std::optional<Aggregation> ParseAggregation(std::string_view name) {
  if (name == "micro") return Aggregation::kMicro;
  if (name == "macro") return Aggregation::kMacro;
  return std::nullopt;
}

std::string_view ToString(Aggregation aggregation) {
  return aggregation == Aggregation::kMicro ? "micro" : "macro";
}

EvalReport EvaluateCorpus(std::span<const ScoringPair> pairs, Aggregation aggregation) {
  EvalReport report;
  report.aggregation = aggregation;
  std::unordered_set<std::string> ids;
  EvalResult& pooled = report.pooled;
  double mar_sum = 0, wer_sum = 0, umwer_sum = 0;
  std::size_t mar_n = 0, umwer_n = 0;

  for (const auto& p : pairs) {
    if (!ids.insert(p.id).second) throw ValidationError("duplicate utterance id '" + p.id + "'");
    if (p.ref.tokens.empty()) throw ValidationError("utterance '" + p.id + "' has an empty reference");
    EvalResult r = Evaluate(p.ref, p.hyp);
    pooled.full += r.full;
    pooled.unmasked += r.unmasked;
    pooled.masks_total += r.masks_total;
    pooled.masks_matched += r.masks_matched;
    wer_sum += r.wer;
    if (r.mar) mar_sum += *r.mar, ++mar_n;
    if (r.umwer) umwer_sum += *r.umwer, ++umwer_n;
    report.per_utterance.emplace_back(p.id, std::move(r));
  }

  if (aggregation == Aggregation::kMicro) {
    if (pooled.masks_total > 0) pooled.mar = Percent(pooled.masks_matched, pooled.masks_total);
    if (pooled.full.reference_words > 0) {
      pooled.wer = Percent(pooled.full.errors(), pooled.full.reference_words);
    }
    if (pooled.unmasked.reference_words > 0) {
      pooled.umwer = Percent(pooled.unmasked.errors(), pooled.unmasked.reference_words);
    }
  } else {
    if (mar_n > 0) pooled.mar = mar_sum / static_cast<double>(mar_n);
    if (!pairs.empty()) pooled.wer = wer_sum / static_cast<double>(pairs.size());
    if (umwer_n > 0) pooled.umwer = umwer_sum / static_cast<double>(umwer_n);
  }
  return report;
}

std::vector<ScoringPair> ParseScoringInput(std::istream& in) {
  std::vector<ScoringPair> out;
  io::ForEachLine(in, [&](std::size_t number, std::string_view line) {
    if (io::IsBlank(line)) return;
    auto fail = [&](const std::string& why) {
      return ValidationError("scoring input line " + std::to_string(number) + ": " + why);
    };
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw fail(std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw fail("not a JSON object");
    for (const char* field : {"id", "ref", "hyp"}) {
      if (!obj.contains(field)) throw fail(std::string("missing field '") + field + "'");
    }
    if (!obj["ref"].is_string() || !obj["hyp"].is_string()) throw fail("'ref' and 'hyp' must be strings");
    std::string id = obj["id"].is_string() ? obj["id"].get<std::string>() : obj["id"].dump();
    ScoringPair p{id, ReferenceFromText(obj["ref"].get<std::string>(), id),
                  Tokenize(obj["hyp"].get<std::string>())};
    if (p.ref.tokens.empty()) throw fail("empty reference");
    out.push_back(std::move(p));
  });
  return out;
}

namespace {

json OptionalNumber(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json ResultToJson(const EvalResult& r) {
  json obj;
  obj["mar"] = OptionalNumber(r.mar);
  obj["wer"] = r.wer;
  obj["umwer"] = OptionalNumber(r.umwer);
  obj["insertions"] = r.full.insertions;
  obj["substitutions"] = r.full.substitutions;
  obj["deletions"] = r.full.deletions;
  obj["reference_words"] = r.full.reference_words;
  obj["unmasked_insertions"] = r.unmasked.insertions;
  obj["unmasked_substitutions"] = r.unmasked.substitutions;
  obj["unmasked_deletions"] = r.unmasked.deletions;
  obj["unmasked_reference_words"] = r.unmasked.reference_words;
  obj["masks_total"] = r.masks_total;
  obj["masks_matched"] = r.masks_matched;
  return obj;
}

std::string Fmt(const std::optional<double>& v) {
  if (!v) return "-";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *v);
  return buf;
}

}  // namespace

std::string ReportToJson(const EvalReport& report) {
  json root;
  root["aggregation"] = ToString(report.aggregation);
  root["pooled"] = ResultToJson(report.pooled);
  json rows = json::array();
  for (const auto& [id, r] : report.per_utterance) {
    json row;
    row["id"] = id;
    json fields = ResultToJson(r);
    for (auto& [k, v] : fields.items()) row[k] = v;
    rows.push_back(std::move(row));
  }
  root["utterances"] = std::move(rows);
  return root.dump(2) + "\n";
}

std::string ReportToTable(const EvalReport& report) {
  std::size_t id_width = 13;  // fits "pooled(micro)"
  for (const auto& [id, r] : report.per_utterance) id_width = std::max(id_width, id.size());
  std::string out;
  char buf[256];
  auto row = [&](const std::string& id, const EvalResult& r) {
    std::snprintf(buf, sizeof(buf), "%-*s %8s %8s %8s %5zu %5zu %5zu %6zu\n",
                  static_cast<int>(id_width), id.c_str(), Fmt(r.mar).c_str(),
                  Fmt(r.wer).c_str(), Fmt(r.umwer).c_str(), r.full.insertions,
                  r.full.substitutions, r.full.deletions, r.full.reference_words);
    out += buf;
  };
  std::snprintf(buf, sizeof(buf), "%-*s %8s %8s %8s %5s %5s %5s %6s\n",
                static_cast<int>(id_width), "id", "MAR", "WER", "UMWER", "I", "S", "D", "N");
  out += buf;
  for (const auto& [id, r] : report.per_utterance) row(id, r);
  out += std::string(id_width + 53, '-') + "\n";
  row("pooled(" + std::string(ToString(report.aggregation)) + ")", report.pooled);
  return out;
}

}  // namespace hatemask::metrics
