// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include "hallucite/pdf/encoding.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <string_view>
#include <unordered_map>

namespace hallucite::pdf {

namespace {

#include "metrics_tables.inc"

const std::unordered_map<std::string_view, char32_t>& glyph_names() {
  static const auto* table = [] {
    auto* map = new std::unordered_map<std::string_view, char32_t>();
    for (std::size_t code = 0; code < 256; ++code) {
      if (!kWinAnsiGlyphNames[code].empty() && kWinAnsiToUnicode[code] != 0) {
        map->emplace(kWinAnsiGlyphNames[code], kWinAnsiToUnicode[code]);
      }
    }
    (*map)["bullet"] = 0x2022;
    (*map)["hyphen"] = '-';
    (*map)["fi"] = 0xFB01;
    (*map)["fl"] = 0xFB02;
    (*map)["ff"] = 0xFB00;
    (*map)["ffi"] = 0xFB03;
    (*map)["ffl"] = 0xFB04;
    (*map)["dotlessi"] = 0x0131;
    (*map)["minus"] = 0x2212;
    (*map)["fraction"] = 0x2044;
    (*map)["quoteright"] = 0x2019;
    (*map)["quoteleft"] = 0x2018;
    (*map)["endash"] = 0x2013;
    (*map)["emdash"] = 0x2014;
    (*map)["nbspace"] = 0x00A0;
    return map;
  }();
  return *table;
}

}  // namespace

char32_t winansi_to_unicode(unsigned char code) { return kWinAnsiToUnicode[code]; }

std::optional<unsigned char> unicode_to_winansi(char32_t cp) {
  static const auto* reverse = [] {
    auto* map = new std::unordered_map<char32_t, unsigned char>();
    for (int code = 255; code >= 32; --code) {
      if (kWinAnsiToUnicode[static_cast<std::size_t>(code)] != 0) {
        (*map)[kWinAnsiToUnicode[static_cast<std::size_t>(code)]] = static_cast<unsigned char>(code);
      }
    }
    (*map)['-'] = '-';
    return map;
  }();
  auto it = reverse->find(cp);
  if (it == reverse->end()) return std::nullopt;
  return it->second;
}

char32_t glyph_name_to_unicode(std::string_view name) {
  const auto& table = glyph_names();
  if (auto it = table.find(name); it != table.end()) return it->second;

  // Suffixed variants such as "a.sc" or "one.oldstyle".
  if (auto dot = name.find('.'); dot != std::string_view::npos && dot > 0) {
    return glyph_name_to_unicode(name.substr(0, dot));
  }
  auto parse_hex = [](std::string_view digits) -> char32_t {
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, 16);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) return 0;
    return value;
  };
  if (name.size() == 7 && name.starts_with("uni")) return parse_hex(name.substr(3));
  if (name.size() >= 5 && name.size() <= 7 && name[0] == 'u') return parse_hex(name.substr(1));
  return 0;
}

double helvetica_width(unsigned char code, bool bold) {
  return bold ? kHelveticaBoldWidths[code] : kHelveticaWidths[code];
}

}  // namespace hallucite::pdf
