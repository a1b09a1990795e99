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

#include "hatemask/text.hpp"

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <cstdio>

namespace hatemask::text {
namespace {

bool IsSpace(UChar32 c) { return u_isUWhiteSpace(c) != 0; }

bool IsEdgePunct(UChar32 c) {
  // Unicode punctuation plus ASCII symbols such as '+', '<' and '$'.
  return u_ispunct(c) || (c < 0x80 && !u_isalnum(c) && !u_isspace(c) && c != 0);
}

std::string ToUtf8(const icu::UnicodeString& s) {
  std::string out;
  s.toUTF8String(out);
  return out;
}

// Strips leading/trailing punctuation from a normalized token. Returns
// "***" when the core that remains after stripping everything but '*' is
// exactly the mask token.
std::string StripToken(const icu::UnicodeString& token) {
  int32_t begin = 0;
  int32_t end = token.length();
  // Pass 1: strip edge punctuation other than '*'.
  int32_t b = begin, e = end;
  while (b < e) {
    UChar32 c = token.char32At(b);
    if (c == u'*' || !IsEdgePunct(c)) break;
    b = token.moveIndex32(b, 1);
  }
  while (e > b) {
    int32_t prev = token.moveIndex32(e, -1);
    UChar32 c = token.char32At(prev);
    if (c == u'*' || !IsEdgePunct(c)) break;
    e = prev;
  }
  icu::UnicodeString core(token, b, e - b);
  if (core == icu::UnicodeString(u"***")) return std::string(kMaskToken);

  // Pass 2: strip all edge punctuation.
  while (begin < end) {
    UChar32 c = token.char32At(begin);
    if (!IsEdgePunct(c)) break;
    begin = token.moveIndex32(begin, 1);
  }
  while (end > begin) {
    int32_t prev = token.moveIndex32(end, -1);
    if (!IsEdgePunct(token.char32At(prev))) break;
    end = prev;
  }
  return ToUtf8(icu::UnicodeString(token, begin, end - begin));
}

icu::UnicodeString Normalize(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString input = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  icu::UnicodeString normalized = nfc->normalize(input, status);
  if (U_FAILURE(status)) throw ValidationError("text is not valid Unicode");
  normalized.toLower(icu::Locale::getRoot());
  return normalized;
}

std::vector<icu::UnicodeString> SplitU(const icu::UnicodeString& s) {
  std::vector<icu::UnicodeString> pieces;
  int32_t i = 0;
  const int32_t n = s.length();
  while (i < n) {
    while (i < n && IsSpace(s.char32At(i))) i = s.moveIndex32(i, 1);
    int32_t start = i;
    while (i < n && !IsSpace(s.char32At(i))) i = s.moveIndex32(i, 1);
    if (i > start) pieces.emplace_back(s, start, i - start);
  }
  return pieces;
}

}  // namespace

Tokens Tokenize(std::string_view text) {
  Tokens tokens;
  for (const auto& piece : SplitU(Normalize(text))) {
    std::string token = StripToken(piece);
    if (!token.empty()) tokens.push_back(std::move(token));
  }
  return tokens;
}

std::string NormalizeLower(std::string_view text) {
  return ToUtf8(Normalize(text));
}

Tokens SplitWhitespace(std::string_view text) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  Tokens out;
  for (const auto& piece : SplitU(s)) out.push_back(ToUtf8(piece));
  return out;
}

std::string Join(const Tokens& tokens, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += sep;
    out += tokens[i];
  }
  return out;
}

std::uint64_t Fnv1a64(std::string_view data) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string Redact(const Tokens& tokens) {
  Tokens out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (IsMask(t)) {
      out.push_back(t);
      continue;
    }
    char buf[9];
    std::snprintf(buf, sizeof(buf), "%08x",
                  static_cast<unsigned>(Fnv1a64(t) & 0xffffffffu));
    out.emplace_back(buf);
  }
  return Join(out);
}

}  // namespace hatemask::text
