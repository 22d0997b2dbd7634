// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hallucite/citation.hpp"
#include "hallucite/pdf/document.hpp"
#include "hallucite/pdf/text.hpp"

namespace hallucite {

/// A visual text line in reading order. `font_size` and `bold` carry the
/// styling cues the section locator uses to recognise headings.
struct TextLine {
  int page_index = 0;
  BoundingBox bbox;
  std::string text;
  int column_index = 0;
  double font_size = 0;
  bool bold = false;
};

struct DocumentLayout {
  std::vector<pdf::Rect> pages;  // media boxes, one per page
  std::vector<TextLine> lines;
};

struct ReferenceRegion {
  std::vector<TextLine> lines;
  TextLine heading_line;
};

/// Groups the glyphs of one page into lines, detects a two-column layout and
/// returns the lines column-major, top to bottom.
std::vector<TextLine> build_page_lines(std::span<const pdf::Glyph> glyphs, int page_index,
                                       const pdf::Rect& media_box);

/// Drops header/footer lines: lines inside the top or bottom 36 pt band
/// whose text (with digits masked) repeats on at least three pages.
std::vector<TextLine> drop_running_lines(std::vector<TextLine> lines,
                                         std::span<const pdf::Rect> pages);

/// Parses a PDF into positioned lines. Throws UnreadableDocument for corrupt
/// or encrypted files and EmptyDocument when there is no text layer.
DocumentLayout extract_layout(const std::filesystem::path& path);
DocumentLayout extract_layout(const pdf::Document& doc);
std::vector<TextLine> extract_document(const std::filesystem::path& path);

bool is_reference_heading(std::string_view text);

/// The region after the last "References"/"Bibliography" heading, up to the
/// first appendix-style heading. Throws NoReferenceSection.
ReferenceRegion locate_reference_section(std::span<const TextLine> lines);

/// Splits the region into entries (markers, then hanging indent, then
/// author-year starts) and joins each entry into one line of text.
std::vector<Citation> segment_entries(const ReferenceRegion& region);

/// Joins two physical lines of one entry, repairing end-of-line hyphenation.
std::string join_lines(std::string_view left, std::string_view right);

/// extract_layout + locate_reference_section + segment_entries.
std::vector<Citation> extract_references(const std::filesystem::path& path);

}  // namespace hallucite
