// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace hallucite::utf8 {

// Decodes one code point starting at `pos` and advances it. Malformed bytes
// decode as U+FFFD and consume a single byte.
char32_t next(std::string_view s, std::size_t& pos);

void append(std::string& out, char32_t cp);

std::u32string decode(std::string_view s);
void decode_into(std::string_view s, std::u32string& out);
std::string encode(std::u32string_view s);

// Number of code points.
std::size_t length(std::string_view s);

}  // namespace hallucite::utf8
