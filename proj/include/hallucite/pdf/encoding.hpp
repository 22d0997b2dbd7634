// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string_view>

namespace hallucite::pdf {

// WinAnsiEncoding code -> Unicode scalar; 0 for unassigned codes.
char32_t winansi_to_unicode(unsigned char code);
std::optional<unsigned char> unicode_to_winansi(char32_t cp);

// Adobe glyph name -> Unicode for the names that occur in text fonts
// (WinAnsi repertoire, common ligatures, uniXXXX / uXXXX forms). 0 if unknown.
char32_t glyph_name_to_unicode(std::string_view name);

// Advance widths of the standard Helvetica faces in 1/1000 em, indexed by
// WinAnsi code.
double helvetica_width(unsigned char code, bool bold);

}  // namespace hallucite::pdf
