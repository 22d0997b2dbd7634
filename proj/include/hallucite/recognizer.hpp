// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hallucite/citation.hpp"

namespace hallucite {

enum class CaseShape { none, lower, upper, title, mixed };

struct TokenShape {
  CaseShape casing = CaseShape::none;
  bool has_digit = false;
  bool all_digits = false;
  bool punctuation = false;  // standalone field punctuation token
  bool followed_by_space = false;  // or end of text

  bool operator==(const TokenShape&) const = default;
};

struct Token {
  std::string text;
  std::size_t start_char = 0;  // UTF-8 byte offsets into the raw text
  std::size_t end_char = 0;
  TokenShape shape;

  bool operator==(const Token&) const = default;
};

/// Splits on whitespace and isolates the field punctuation
/// . , : ; " ( ) “ ” ‘ ’ as standalone tokens.
std::vector<Token> tokenize(std::string_view raw_text);

/// Sequence labeler contract: exactly one tag per token.
class Labeler {
 public:
  virtual ~Labeler() = default;
  virtual std::string name() const = 0;
  virtual std::string version() const = 0;
  virtual std::vector<FieldTag> label(std::span<const Token> tokens) const = 0;
};

/// Deterministic default: punctuation segmentation, cue-word lexicons and
/// positional priors. Stateless, so one instance can serve every worker.
class RuleLabeler final : public Labeler {
 public:
  std::string name() const override { return "rules"; }
  std::string version() const override { return "1.0"; }
  std::vector<FieldTag> label(std::span<const Token> tokens) const override;
};

/// Linear-chain model over sparse token features, decoded with Viterbi.
/// Weights come from a text file:
///
///   name <TAB> NAME
///   version <TAB> VERSION
///   emit <TAB> FEATURE <TAB> TAG <TAB> WEIGHT
///   trans <TAB> PREV_TAG <TAB> TAG <TAB> WEIGHT
///
/// Loading a missing or malformed file throws ModelUnavailable.
class LinearChainLabeler final : public Labeler {
 public:
  explicit LinearChainLabeler(const std::filesystem::path& weights);

  std::string name() const override { return name_; }
  std::string version() const override { return version_; }
  std::vector<FieldTag> label(std::span<const Token> tokens) const override;

  static std::vector<std::string> features(std::span<const Token> tokens, std::size_t i);

 private:
  std::string name_;
  std::string version_;
  std::unordered_map<std::string, std::vector<std::pair<FieldTag, double>>> emit_;
  double transition_[kFieldTagCount][kFieldTagCount] = {};
};

/// "rules" selects the default labeler; "crf:PATH" loads a weights file.
std::unique_ptr<Labeler> make_labeler(std::string_view spec);

/// Labels and checks the contract (one tag per token). Throws Error if the
/// labeler breaks it.
std::vector<FieldTag> label_tokens(std::span<const Token> tokens, const Labeler& labeler);

/// Turns per-token tags into spans, fills `fields`, picks the longest title
/// run (earliest on ties) and advances status to recognized/unverifiable.
/// Throws LengthMismatch when tags and tokens disagree.
Citation assemble_fields(Citation c, std::span<const FieldTag> tags);

Citation parse_citation(Citation c, const Labeler& labeler);

/// Order-preserving batch form of parse_citation. Work fans out over OpenMP
/// threads; the first failure is rethrown with the citation index.
std::vector<Citation> parse_batch(std::vector<Citation> citations, const Labeler& labeler);

}  // namespace hallucite
