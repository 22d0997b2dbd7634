// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

#include <cctype>
#include <stdexcept>

#include "hallucite/similarity.hpp"

namespace hallucite {

namespace {

bool is_ascii(std::string_view s) {
  for (unsigned char c : s) {
    if (c >= 0x80) return false;
  }
  return true;
}

std::string normalize_ascii(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (unsigned char c : s) {
    if (std::isalnum(c)) {
      if (pending && !out.empty()) out.push_back(' ');
      pending = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      pending = true;
    }
  }
  return out;
}

const icu::Normalizer2& instance(const icu::Normalizer2* (*get)(UErrorCode&)) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = get(status);
  if (U_FAILURE(status) || n == nullptr) throw std::runtime_error("ICU normalizer unavailable");
  return *n;
}

icu::UnicodeString apply(const icu::Normalizer2& n, const icu::UnicodeString& s) {
  UErrorCode status = U_ZERO_ERROR;
  icu::UnicodeString out = n.normalize(s, status);
  if (U_FAILURE(status)) throw std::runtime_error("ICU normalization failed");
  return out;
}

UChar32 unify(UChar32 c) {
  if (u_charType(c) == U_DASH_PUNCTUATION || c == 0x2212) return '-';
  switch (c) {
    case 0x2018: case 0x2019: case 0x201A: case 0x201B: case 0x2032:
      return '\'';
    case 0x201C: case 0x201D: case 0x201E: case 0x201F: case 0x2033:
      return '"';
    default:
      return c;
  }
}

bool keeps(UChar32 c) {
  return u_isalpha(c) || u_isdigit(c) || u_charType(c) == U_COMBINING_SPACING_MARK;
}

}  // namespace

std::string normalize_title(std::string_view s) {
  if (is_ascii(s)) return normalize_ascii(s);

  static const icu::Normalizer2& nfkc = instance(&icu::Normalizer2::getNFKCInstance);
  static const icu::Normalizer2& nfd = instance(&icu::Normalizer2::getNFDInstance);
  static const icu::Normalizer2& nfc = instance(&icu::Normalizer2::getNFCInstance);

  icu::UnicodeString text = icu::UnicodeString::fromUTF8(
      icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
  text = apply(nfkc, text);
  text.foldCase();
  text = apply(nfd, text);

  icu::UnicodeString collapsed;
  bool pending = false;
  for (int32_t i = 0; i < text.length();) {
    const UChar32 c = unify(text.char32At(i));
    i += U16_LENGTH(c);
    if (u_charType(c) == U_NON_SPACING_MARK) continue;
    if (keeps(c)) {
      if (pending && !collapsed.isEmpty()) collapsed.append(static_cast<UChar>(' '));
      pending = false;
      collapsed.append(c);
    } else {
      pending = true;
    }
  }
  collapsed = apply(nfc, collapsed);
  std::string out;
  collapsed.toUTF8String(out);
  return out;
}

}  // namespace hallucite
