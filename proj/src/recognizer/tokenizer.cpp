// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <unicode/uchar.h>

#include "hallucite/recognizer.hpp"
#include "hallucite/utf8.hpp"

namespace hallucite {

namespace {

bool is_field_punctuation(char32_t cp) {
  switch (cp) {
    case '.': case ',': case ':': case ';': case '"': case '(': case ')':
    case 0x201C: case 0x201D: case 0x2018: case 0x2019:
      return true;
    default:
      return false;
  }
}

bool is_space(char32_t cp) { return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == 0xA0 || u_isUWhiteSpace(static_cast<UChar32>(cp)); }

TokenShape shape_of(std::string_view text, bool punctuation) {
  TokenShape shape;
  shape.punctuation = punctuation;
  int upper = 0, lower = 0, digits = 0, letters = 0, total = 0;
  bool first_upper = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = utf8::next(text, pos);
    ++total;
    if (u_isdigit(static_cast<UChar32>(cp))) {
      ++digits;
    } else if (u_isalpha(static_cast<UChar32>(cp))) {
      if (letters == 0) first_upper = u_isupper(static_cast<UChar32>(cp));
      ++letters;
      if (u_isupper(static_cast<UChar32>(cp))) ++upper;
      if (u_islower(static_cast<UChar32>(cp))) ++lower;
    }
  }
  shape.has_digit = digits > 0;
  shape.all_digits = total > 0 && digits == total;
  if (letters == 0) {
    shape.casing = CaseShape::none;
  } else if (upper == letters) {
    shape.casing = CaseShape::upper;
  } else if (lower == letters) {
    shape.casing = CaseShape::lower;
  } else if (first_upper && upper == 1) {
    shape.casing = CaseShape::title;
  } else {
    shape.casing = CaseShape::mixed;
  }
  return shape;
}

}  // namespace

std::vector<Token> tokenize(std::string_view raw_text) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  std::size_t word_start = std::string_view::npos;

  auto emit = [&](std::size_t start, std::size_t end, bool punct) {
    Token t;
    t.text = std::string(raw_text.substr(start, end - start));
    t.start_char = start;
    t.end_char = end;
    t.shape = shape_of(t.text, punct);
    tokens.push_back(std::move(t));
  };

  while (pos < raw_text.size()) {
    const std::size_t here = pos;
    const char32_t cp = utf8::next(raw_text, pos);
    if (is_space(cp)) {
      if (word_start != std::string_view::npos) emit(word_start, here, false);
      word_start = std::string_view::npos;
    } else if (is_field_punctuation(cp)) {
      if (word_start != std::string_view::npos) emit(word_start, here, false);
      word_start = std::string_view::npos;
      emit(here, pos, true);
    } else if (word_start == std::string_view::npos) {
      word_start = here;
    }
  }
  if (word_start != std::string_view::npos) emit(word_start, raw_text.size(), false);

  for (auto& t : tokens) {
    std::size_t p = t.end_char;
    t.shape.followed_by_space = p >= raw_text.size() || is_space(utf8::next(raw_text, p));
  }
  return tokens;
}

}  // namespace hallucite
