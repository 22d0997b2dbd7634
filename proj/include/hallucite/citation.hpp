// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hallucite {

/// Page-anchored rectangle in PDF user space (points, y grows upwards).
struct BoundingBox {
  int page_index = 0;
  double x0 = 0;
  double y0 = 0;
  double x1 = 0;
  double y1 = 0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool well_formed() const { return page_index >= 0 && x0 <= x1 && y0 <= y1; }

  bool operator==(const BoundingBox&) const = default;
};

/// The 18 bibliographic field tags plus the out-of-field value.
enum class FieldTag {
  author,
  booktitle,
  collaboration,
  date,
  editor,
  institution,
  issue,
  journal,
  location,
  note,
  pages,
  publisher,
  pubnum,
  series,
  tech,
  title,
  volume,
  web,
  other,
};

inline constexpr std::size_t kFieldTagCount = 19;

inline constexpr std::array<FieldTag, kFieldTagCount> kAllFieldTags = {
    FieldTag::author,    FieldTag::booktitle, FieldTag::collaboration,
    FieldTag::date,      FieldTag::editor,    FieldTag::institution,
    FieldTag::issue,     FieldTag::journal,   FieldTag::location,
    FieldTag::note,      FieldTag::pages,     FieldTag::publisher,
    FieldTag::pubnum,    FieldTag::series,    FieldTag::tech,
    FieldTag::title,     FieldTag::volume,    FieldTag::web,
    FieldTag::other,
};

std::string_view to_string(FieldTag tag);
// Throws InvalidRecord for names outside the closed tag set.
FieldTag parse_field_tag(std::string_view name);

/// A contiguous run of tokens carrying one tag. Offsets are UTF-8 byte
/// offsets into Citation::raw_text, half-open.
struct LabeledSpan {
  FieldTag tag = FieldTag::other;
  std::size_t start_char = 0;
  std::size_t end_char = 0;
  std::string text;

  bool operator==(const LabeledSpan&) const = default;
};

struct MatchResult {
  bool matched = false;
  double score = 0.0;
  std::string db_name;
  std::string matched_id;
  std::string matched_title;

  bool operator==(const MatchResult&) const = default;
};

enum class CitationStatus { extracted, recognized, verified, unverifiable };

std::string_view to_string(CitationStatus status);
CitationStatus parse_status(std::string_view name);

// True when moving from `from` to `to` respects
// extracted -> recognized -> {verified, unverifiable}. Staying put is allowed.
bool is_forward_transition(CitationStatus from, CitationStatus to);

/// The record carried through extraction, recognition and matching.
struct Citation {
  std::string raw_text;
  std::vector<BoundingBox> bboxes;
  std::vector<LabeledSpan> spans;
  std::string title;
  std::map<FieldTag, std::string> fields;
  std::optional<MatchResult> match;
  CitationStatus status = CitationStatus::extracted;

  // Moves status forward; throws StatusRegression otherwise.
  void advance(CitationStatus next);

  bool operator==(const Citation&) const = default;
};

enum class Verbosity { minimal, normal, full };

/// Builds a Citation from a flat record. Only `raw_text` is required; the
/// remaining schema keys (bboxes, spans, title, fields, match, status) are
/// optional. Any other key is rejected with UnknownField.
Citation citation_from_record(const nlohmann::json& record);

/// Inverse of citation_from_record.
nlohmann::json citation_to_record(const Citation& c);

/// Deterministic human-readable rendering. Minimal verbosity is the raw text
/// alone; full verbosity adds the field record, match score and boxes.
std::string render_citation(const Citation& c, Verbosity verbosity);

/// The `{"author": ..., "title": ...}` projection printed for flagged entries.
nlohmann::ordered_json field_record(const Citation& c);

}  // namespace hallucite
