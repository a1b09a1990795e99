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

#include "hatemask/corpus.hpp"

#include <algorithm>
#include <cctype>
#include "json.hpp"

#include "hatemask/io.hpp"
#include "hatemask/text.hpp"

namespace hatemask::corpus {

using json = nlohmann::ordered_json;

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

const json& Require(const json& obj, const char* field) {
  auto it = obj.find(field);
  if (it == obj.end()) throw ValidationError(std::string("missing field '") + field + "'");
  return *it;
}

Source ParseSource(std::string_view name) {
  std::string s = Lower(name);
  if (s == "original") return Source::kOriginal;
  if (s == "generated") return Source::kGenerated;
  throw ValidationError("unknown source '" + std::string(name) + "'");
}

}  // namespace

AnnotatorLabel ParseAnnotatorLabel(std::string_view name) {
  std::string s = Lower(name);
  if (s == "hateful" || s == "hatespeech") return AnnotatorLabel::kHateful;
  if (s == "offensive") return AnnotatorLabel::kOffensive;
  if (s == "normal") return AnnotatorLabel::kNormal;
  if (s == "undecided") return AnnotatorLabel::kUndecided;
  throw ValidationError("annotator label '" + std::string(name) + "' is not one of "
                        "Hateful, Offensive, Normal, Undecided");
}

std::string_view ToString(AnnotatorLabel label) {
  switch (label) {
    case AnnotatorLabel::kHateful: return "Hateful";
    case AnnotatorLabel::kOffensive: return "Offensive";
    case AnnotatorLabel::kNormal: return "Normal";
    case AnnotatorLabel::kUndecided: return "Undecided";
  }
  return "?";
}

std::string_view ToString(Source source) {
  return source == Source::kOriginal ? "original" : "generated";
}

void Validate(const UtteranceRecord& record) {
  if (record.id.empty()) throw ValidationError("empty id");
  if (record.rationale_votes.size() != record.tokens.size()) {
    throw ValidationError("record " + record.id + ": " +
                          std::to_string(record.rationale_votes.size()) +
                          " rationale votes for " + std::to_string(record.tokens.size()) +
                          " tokens");
  }
  for (int v : record.rationale_votes) {
    if (v < 0 || v > 3) {
      throw ValidationError("record " + record.id + ": rationale vote " + std::to_string(v) +
                            " outside [0, 3]");
    }
  }
  for (const auto& t : record.tokens) {
    if (t.empty()) throw ValidationError("record " + record.id + ": empty token");
  }
}

MaskedSentence MaskedSentence::FromTokens(Tokens tokens, std::string origin_id) {
  MaskedSentence m;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (IsMask(tokens[i])) m.mask_positions.push_back(i);
  }
  m.tokens = std::move(tokens);
  m.origin_id = std::move(origin_id);
  return m;
}

UtteranceRecord ParseRecord(std::string_view line) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!obj.is_object()) throw ValidationError("record is not a JSON object");

  UtteranceRecord r;
  try {
    const json& id = Require(obj, "id");
    r.id = id.is_string() ? id.get<std::string>() : id.dump();

    auto tok = obj.find("tokens");
    auto txt = obj.find("text");
    if (txt != obj.end() && !txt->is_null()) r.text = txt->get<std::string>();
    if (tok != obj.end() && !tok->is_null()) {
      for (const auto& t : *tok) {
        std::string normalized = text::NormalizeLower(t.get<std::string>());
        if (normalized.empty()) throw ValidationError("empty token");
        r.tokens.push_back(std::move(normalized));
      }
    } else if (r.text) {
      r.tokens = text::Tokenize(*r.text);
    } else {
      throw ValidationError("record needs 'tokens' or 'text'");
    }

    const json& annotators = Require(obj, "annotators");
    if (!annotators.is_array() || annotators.size() != 3) {
      throw ValidationError("expected exactly 3 annotator labels, got " +
                            std::to_string(annotators.is_array() ? annotators.size() : 0));
    }
    for (std::size_t i = 0; i < 3; ++i) {
      r.annotator_labels[i] = ParseAnnotatorLabel(annotators[i].get<std::string>());
    }

    auto target = obj.find("target");
    if (target != obj.end() && !target->is_null()) r.target = target->get<std::string>();

    r.rationale_votes.assign(r.tokens.size(), 0);
    auto rationales = obj.find("rationales");
    if (rationales != obj.end() && !rationales->is_null()) {
      if (!rationales->is_array() || rationales->size() > 3) {
        throw ValidationError("'rationales' must hold at most 3 index arrays");
      }
      for (const auto& highlights : *rationales) {
        std::vector<bool> seen(r.tokens.size(), false);
        for (const auto& idx : highlights) {
          if (!idx.is_number_integer()) throw ValidationError("rationale index is not an integer");
          auto i = idx.get<long long>();
          if (i < 0 || static_cast<std::size_t>(i) >= r.tokens.size()) {
            throw ValidationError("rationale index " + std::to_string(i) + " outside " +
                                  std::to_string(r.tokens.size()) + " tokens");
          }
          if (seen[i]) throw ValidationError("duplicate rationale index " + std::to_string(i));
          seen[i] = true;
          ++r.rationale_votes[i];
        }
      }
    }

    auto source = obj.find("source");
    if (source != obj.end() && !source->is_null()) r.source = ParseSource(source->get<std::string>());
  } catch (const json::exception& e) {
    throw ValidationError(std::string("wrong field type: ") + e.what());
  }
  Validate(r);
  return r;
}

ParsedCorpus ParseCorpus(std::istream& in) {
  ParsedCorpus out;
  io::ForEachLine(in, [&](std::size_t number, std::string_view line) {
    if (io::IsBlank(line)) return;
    try {
      out.records.push_back(ParseRecord(line));
    } catch (const ValidationError& e) {
      out.errors.push_back({number, e.what()});
    }
  });
  return out;
}

std::string Serialize(const UtteranceRecord& r) {
  json obj;
  obj["id"] = r.id;
  if (r.text) obj["text"] = *r.text;
  obj["tokens"] = r.tokens;
  json labels = json::array();
  for (auto l : r.annotator_labels) labels.push_back(ToString(l));
  obj["annotators"] = labels;
  obj["target"] = r.target ? json(*r.target) : json(nullptr);
  json rationales = json::array();
  for (int k = 0; k < 3; ++k) {
    json highlights = json::array();
    for (std::size_t i = 0; i < r.rationale_votes.size(); ++i) {
      if (r.rationale_votes[i] > k) highlights.push_back(i);
    }
    rationales.push_back(highlights);
  }
  obj["rationales"] = rationales;
  obj["source"] = ToString(r.source);
  return obj.dump();
}

bool IsUnanimousHateful(const UtteranceRecord& record) {
  return std::all_of(record.annotator_labels.begin(), record.annotator_labels.end(),
                     [](AnnotatorLabel l) { return l == AnnotatorLabel::kHateful; });
}

MaskedSentence BuildMaskedReference(const UtteranceRecord& record, int vote_threshold) {
  if (vote_threshold < 1 || vote_threshold > 3) {
    throw ValidationError("vote threshold " + std::to_string(vote_threshold) +
                          " outside [1, 3]");
  }
  MaskedSentence m;
  m.origin_id = record.id;
  m.tokens.reserve(record.tokens.size());
  for (std::size_t i = 0; i < record.tokens.size(); ++i) {
    if (record.rationale_votes[i] >= vote_threshold || IsMask(record.tokens[i])) {
      m.tokens.emplace_back(kMaskToken);
      m.mask_positions.push_back(i);
    } else {
      m.tokens.push_back(record.tokens[i]);
    }
  }
  return m;
}

std::string MaskedToJson(const MaskedSentence& masked, const std::optional<std::string>& target) {
  json obj;
  obj["id"] = masked.origin_id;
  obj["text"] = text::Join(masked.tokens);
  obj["tokens"] = masked.tokens;
  obj["mask_positions"] = masked.mask_positions;
  if (target) obj["target"] = *target;
  return obj.dump();
}

Overrides ParseOverrides(std::istream& in) {
  Overrides out;
  io::ForEachLine(in, [&](std::size_t number, std::string_view line) {
    auto start = line.find_first_not_of(" \t");
    if (start == std::string_view::npos || line[start] == '#') return;
    line.remove_prefix(start);
    auto end = line.find_last_not_of(" \t");
    line = line.substr(0, end + 1);
    if (line.size() < 2 || (line[0] != '+' && line[0] != '-')) {
      throw ValidationError("override line " + std::to_string(number) +
                            ": expected '+id' or '-id'");
    }
    out[std::string(line.substr(1))] = line[0] == '+';
  });
  return out;
}

const std::vector<std::string>& SymbolPrefilter::DefaultPatterns() {
  static const std::vector<std::string> kPatterns = {
      // emoticons such as :) ;-( =d :p xd <3 ^_^ (input is lowercased)
      R"(^[:;=8][-'^o]?[()\[\]dp/\\|*o3$@]+$)",
      R"(^[()\[\]d/\\|]+[-'^o]?[:;=8]$)",
      R"(^x[dp]+$)",
      R"(<3)",
      R"(\^_*\^)",
      // URLs and handles
      R"(^https?$)",
      R"(https?:)",
      R"(^www$)",
      R"(^www\.)",
      R"(\.(com|net|org|ly|co)(/|$))",
      R"(^@\w)",
  };
  return kPatterns;
}

SymbolPrefilter::SymbolPrefilter() : SymbolPrefilter(DefaultPatterns()) {}

SymbolPrefilter::SymbolPrefilter(std::vector<std::string> patterns, Overrides overrides)
    : pattern_text_(std::move(patterns)), overrides_(std::move(overrides)) {
  patterns_.reserve(pattern_text_.size());
  for (const auto& p : pattern_text_) {
    try {
      patterns_.emplace_back(p, std::regex::ECMAScript | std::regex::optimize);
    } catch (const std::regex_error& e) {
      throw ValidationError("bad prefilter pattern '" + p + "': " + e.what());
    }
  }
}

bool SymbolPrefilter::MatchesPattern(std::string_view piece) const {
  for (const auto& re : patterns_) {
    if (std::regex_search(piece.begin(), piece.end(), re)) return true;
  }
  return false;
}

bool SymbolPrefilter::Keep(const UtteranceRecord& record) const {
  if (auto it = overrides_.find(record.id); it != overrides_.end()) return it->second;
  for (const auto& token : record.tokens) {
    if (IsMask(token)) continue;
    for (char c : token) {
      if (!((c >= 'a' && c <= 'z') || c == '\'')) return false;
    }
    if (MatchesPattern(token)) return false;
  }
  if (record.text) {
    for (const auto& piece : text::SplitWhitespace(text::NormalizeLower(*record.text))) {
      if (MatchesPattern(piece)) return false;
    }
  }
  return true;
}

}  // namespace hatemask::corpus
