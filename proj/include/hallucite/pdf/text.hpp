// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hallucite/pdf/document.hpp"

namespace hallucite::pdf {

// One shown character in page space. `text` is UTF-8 and may hold more than
// one code point (ligatures) or a single space.
struct Glyph {
  std::string text;
  double x0 = 0;
  double y0 = 0;
  double x1 = 0;
  double y1 = 0;
  double baseline = 0;
  double size = 0;  // effective font size in points
  bool bold = false;
};

// Runs the page's content streams (including nested form XObjects) and
// returns every glyph in content order.
std::vector<Glyph> extract_glyphs(const Document& doc, std::size_t page_index);

// Highlight rectangles (/Subtype /Highlight) attached to a page, as stored
// in their /Rect entries.
std::vector<Rect> highlight_rects(const Document& doc, std::size_t page_index);

}  // namespace hallucite::pdf
