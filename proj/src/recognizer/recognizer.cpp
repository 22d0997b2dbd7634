// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <exception>
#include <string>

#include "hallucite/errors.hpp"
#include "hallucite/recognizer.hpp"

namespace hallucite {

std::vector<FieldTag> label_tokens(std::span<const Token> tokens, const Labeler& labeler) {
  std::vector<FieldTag> tags = labeler.label(tokens);
  if (tags.size() != tokens.size()) {
    throw LengthMismatch("labeler '" + labeler.name() + "' returned " + std::to_string(tags.size()) +
                         " tags for " + std::to_string(tokens.size()) + " tokens");
  }
  return tags;
}

Citation assemble_fields(Citation c, std::span<const FieldTag> tags) {
  const std::vector<Token> tokens = tokenize(c.raw_text);
  if (tags.size() != tokens.size()) {
    throw LengthMismatch("got " + std::to_string(tags.size()) + " tags for " +
                         std::to_string(tokens.size()) + " tokens");
  }
  c.spans.clear();
  c.fields.clear();
  c.title.clear();

  std::size_t best_title = 0;
  std::size_t best_len = 0;
  bool have_title = false;
  for (std::size_t i = 0; i < tokens.size();) {
    std::size_t j = i + 1;
    while (j < tokens.size() && tags[j] == tags[i]) ++j;
    LabeledSpan span;
    span.tag = tags[i];
    span.start_char = tokens[i].start_char;
    span.end_char = tokens[j - 1].end_char;
    span.text = c.raw_text.substr(span.start_char, span.end_char - span.start_char);
    if (span.tag == FieldTag::title && j - i > best_len) {
      best_len = j - i;
      best_title = c.spans.size();
      have_title = true;
    }
    c.spans.push_back(std::move(span));
    i = j;
  }

  for (const auto& span : c.spans) {
    if (span.tag == FieldTag::other || span.tag == FieldTag::title) continue;
    std::string& value = c.fields[span.tag];
    if (!value.empty()) value += " ";
    value += span.text;
  }
  if (have_title) {
    c.title = c.spans[best_title].text;
    c.fields[FieldTag::title] = c.title;
  }
  c.advance(have_title ? CitationStatus::recognized : CitationStatus::unverifiable);
  return c;
}

Citation parse_citation(Citation c, const Labeler& labeler) {
  const std::vector<Token> tokens = tokenize(c.raw_text);
  const std::vector<FieldTag> tags = label_tokens(tokens, labeler);
  return assemble_fields(std::move(c), tags);
}

std::vector<Citation> parse_batch(std::vector<Citation> citations, const Labeler& labeler) {
  const auto n = static_cast<std::ptrdiff_t>(citations.size());
  std::vector<std::exception_ptr> errors(citations.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      citations[k] = parse_citation(std::move(citations[k]), labeler);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!errors[k]) continue;
    try {
      std::rethrow_exception(errors[k]);
    } catch (const Error& e) {
      e.rethrow_with("citation " + std::to_string(k) + ": ");
    }
  }
  return citations;
}

}  // namespace hallucite
