// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <unicode/uchar.h>

#include <algorithm>
#include <map>
#include <optional>
#include <regex>

#include "hallucite/errors.hpp"
#include "hallucite/extractor.hpp"
#include "hallucite/utf8.hpp"

namespace hallucite {

namespace {

// Continuation lines sit at least this far right of the entry's first line.
constexpr double kHangingIndent = 8.0;
// Lines within this distance of the column margin count as "at the margin".
constexpr double kMarginSlack = 4.0;

const std::regex& reference_heading_re() {
  static const std::regex re(
      R"(^(?:(?:\d+(?:\.\d+)*|[IVXLC]+)\.?\s+)?(?:references|reference|bibliography)$)",
      std::regex::icase | std::regex::optimize);
  return re;
}

const std::regex& end_heading_re() {
  static const std::regex re(
      R"(^(?:(?:\d+|[A-Z])(?:\.\d+)*\.?\s+)?(?:appendix|appendices|supplementary)\b.*)",
      std::regex::icase | std::regex::optimize);
  return re;
}

const std::regex& appendix_letter_re() {
  static const std::regex re(R"(^[A-Z](?:\.\d+)*\.?\s+[A-Z0-9].*)", std::regex::optimize);
  return re;
}

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(a, b - a + 1));
}

double median_font_size(std::span<const TextLine> lines) {
  std::vector<double> sizes;
  for (const auto& l : lines) sizes.push_back(l.font_size);
  if (sizes.empty()) return 0;
  std::nth_element(sizes.begin(), sizes.begin() + static_cast<std::ptrdiff_t>(sizes.size() / 2),
                   sizes.end());
  return sizes[sizes.size() / 2];
}

bool styled_as_heading(const TextLine& line, double body_size) {
  return line.bold || (body_size > 0 && line.font_size >= body_size + 1.0);
}

bool ends_region(const TextLine& line, double body_size) {
  const std::string text = trim(line.text);
  if (std::regex_match(text, end_heading_re())) {
    return styled_as_heading(line, body_size) || text.size() <= 40;
  }
  if (styled_as_heading(line, body_size) && text.size() <= 80 && text.back() != ',' &&
      std::regex_match(text, appendix_letter_re())) {
    return true;
  }
  return false;
}

struct Marker {
  long value = 0;
  std::size_t length = 0;  // bytes to strip from the line start
};

std::optional<Marker> bracket_marker(const std::string& text) {
  static const std::regex re(R"(^\[(\d{1,4})\]\s*)");
  std::smatch m;
  if (!std::regex_search(text, m, re)) return std::nullopt;
  return Marker{std::stol(m[1].str()), static_cast<std::size_t>(m.length(0))};
}

std::optional<Marker> numbered_marker(const std::string& text) {
  static const std::regex re(R"(^(\d{1,4})\.\s+)");
  std::smatch m;
  if (!std::regex_search(text, m, re)) return std::nullopt;
  return Marker{std::stol(m[1].str()), static_cast<std::size_t>(m.length(0))};
}

bool author_year_start(const std::string& text) {
  // "Surname, I." / "Surname, Firstname" / "Firstname Surname, ..." at line start.
  static const std::regex re(
      R"(^(?:[A-Z][^\s,.;:()]*\s+){0,3}[A-Z][^\s,.;:()]+,\s+(?:[A-Z][^\s,]*))");
  return std::regex_search(text, re);
}

char32_t last_code_point(std::string_view s) {
  if (s.empty()) return 0;
  std::size_t start = s.size() - 1;
  while (start > 0 && (static_cast<unsigned char>(s[start]) & 0xC0) == 0x80) --start;
  std::size_t pos = start;
  return utf8::next(s, pos);
}

char32_t first_code_point(std::string_view s) {
  if (s.empty()) return 0;
  std::size_t pos = 0;
  return utf8::next(s, pos);
}

// Leftmost x0 that at least two lines share (within the slack), so a stray
// outlier does not define the margin.
double column_margin(const std::vector<double>& xs) {
  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    if (sorted[i + 1] - sorted[i] <= kMarginSlack / 2) return sorted[i];
  }
  return sorted.empty() ? 0 : sorted.front();
}

enum class Style { bracket, numbered, hanging, author_year };

}  // namespace

bool is_reference_heading(std::string_view text) {
  return std::regex_match(trim(text), reference_heading_re());
}

ReferenceRegion locate_reference_section(std::span<const TextLine> lines) {
  std::optional<std::size_t> heading;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_reference_heading(lines[i].text)) heading = i;
  }
  if (!heading) throw NoReferenceSection("no References/Bibliography heading found");

  ReferenceRegion region;
  region.heading_line = lines[*heading];
  const auto tail = lines.subspan(*heading + 1);
  const double body_size = median_font_size(tail);
  for (const auto& line : tail) {
    if (ends_region(line, body_size)) break;
    region.lines.push_back(line);
  }
  return region;
}

std::string join_lines(std::string_view left, std::string_view right) {
  std::string l = trim(left);
  std::string r = trim(right);
  if (l.empty()) return r;
  if (r.empty()) return l;
  if (l.back() == '-' && l.size() >= 2) {
    const char32_t before = last_code_point(std::string_view(l).substr(0, l.size() - 1));
    const char32_t after = first_code_point(r);
    if (u_islower(static_cast<UChar32>(before)) && u_islower(static_cast<UChar32>(after))) {
      l.pop_back();
      return l + r;
    }
  }
  return l + " " + r;
}

std::vector<Citation> segment_entries(const ReferenceRegion& region) {
  const auto& lines = region.lines;
  std::vector<Citation> out;
  if (lines.empty()) return out;

  std::vector<std::optional<Marker>> brackets, numbers;
  std::size_t bracket_count = 0, number_count = 0;
  for (const auto& line : lines) {
    brackets.push_back(bracket_marker(line.text));
    numbers.push_back(numbered_marker(line.text));
    bracket_count += brackets.back() ? 1 : 0;
    number_count += numbers.back() ? 1 : 0;
  }

  // Per-column margins and hanging-indent detection.
  std::map<int, std::vector<double>> xs_by_column;
  for (const auto& line : lines) xs_by_column[line.column_index].push_back(line.bbox.x0);
  std::map<int, double> margin;
  bool hanging = false;
  for (const auto& [column, xs] : xs_by_column) {
    margin[column] = column_margin(xs);
    for (double x : xs) {
      const double indent = x - margin[column];
      if (indent >= kHangingIndent && indent <= 72.0) hanging = true;
    }
  }

  Style style = Style::author_year;
  if (brackets.front() && bracket_count >= 1) {
    style = Style::bracket;
  } else if (numbers.front() && number_count >= 2) {
    style = Style::numbered;
  } else if (hanging) {
    style = Style::hanging;
  }

  std::vector<bool> starts(lines.size(), false);
  std::vector<std::size_t> strip(lines.size(), 0);
  long last_number = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    switch (style) {
      case Style::bracket:
        if (brackets[i]) {
          starts[i] = true;
          strip[i] = brackets[i]->length;
        }
        break;
      case Style::numbered:
        if (numbers[i] && (i == 0 || (numbers[i]->value > last_number &&
                                      numbers[i]->value <= last_number + 3))) {
          starts[i] = true;
          strip[i] = numbers[i]->length;
          last_number = numbers[i]->value;
        }
        break;
      case Style::hanging:
        starts[i] = line.bbox.x0 - margin[line.column_index] < kMarginSlack;
        break;
      case Style::author_year: {
        const bool prev_closed = i == 0 || (!lines[i - 1].text.empty() && lines[i - 1].text.back() == '.');
        starts[i] = i == 0 || (prev_closed && author_year_start(line.text) &&
                               line.bbox.x0 - margin[line.column_index] < kMarginSlack);
        break;
      }
    }
  }
  starts[0] = true;

  Citation current;
  bool open = false;
  auto flush = [&] {
    if (open && !current.raw_text.empty()) out.push_back(std::move(current));
    current = Citation{};
    open = false;
  };
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (starts[i]) flush();
    const std::string_view text = std::string_view(lines[i].text).substr(std::min(strip[i], lines[i].text.size()));
    current.raw_text = open ? join_lines(current.raw_text, text) : trim(text);
    current.bboxes.push_back(lines[i].bbox);
    open = true;
  }
  flush();
  return out;
}

std::vector<Citation> extract_references(const std::filesystem::path& path) {
  const DocumentLayout layout = extract_layout(path);
  return segment_entries(locate_reference_section(layout.lines));
}

}  // namespace hallucite
