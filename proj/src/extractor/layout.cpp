// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

#include "hallucite/errors.hpp"
#include "hallucite/extractor.hpp"

namespace hallucite {

namespace {

// Horizontal gap (in font sizes) that still counts as the same line.
constexpr double kMaxJoinGap = 1.5;
// Gap (in font sizes) that implies a word break when no space glyph exists.
constexpr double kImplicitSpace = 0.15;
constexpr double kBaselineTolerance = 0.35;
constexpr double kRunningBand = 36.0;
constexpr int kRunningMinPages = 3;

struct Fragment {
  std::string text;
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  double baseline = 0;
  double size = 0;
  int bold_chars = 0;
  int chars = 0;
  int column = 0;

  bool empty() const { return chars == 0; }
};

bool is_blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool pending = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending = !out.empty();
    } else {
      if (pending) out.push_back(' ');
      pending = false;
      out.push_back(c);
    }
  }
  return out;
}

void extend(Fragment& f, const pdf::Glyph& g, bool space_before) {
  if (f.empty()) {
    f.x0 = g.x0;
    f.y0 = g.y0;
    f.x1 = g.x1;
    f.y1 = g.y1;
    f.baseline = g.baseline;
  } else {
    if (space_before) f.text.push_back(' ');
    f.x0 = std::min(f.x0, g.x0);
    f.y0 = std::min(f.y0, g.y0);
    f.x1 = std::max(f.x1, g.x1);
    f.y1 = std::max(f.y1, g.y1);
  }
  f.text += g.text;
  f.size = std::max(f.size, g.size);
  f.chars += 1;
  f.bold_chars += g.bold ? 1 : 0;
}

bool continues(const Fragment& f, const pdf::Glyph& g) {
  const double size = std::max({f.size, g.size, 1.0});
  if (std::abs(g.baseline - f.baseline) > kBaselineTolerance * size) return false;
  const double gap = g.x0 - f.x1;
  return gap > -0.5 * size && gap < kMaxJoinGap * size;
}

std::vector<Fragment> group_glyphs(std::span<const pdf::Glyph> glyphs) {
  std::vector<Fragment> out;
  Fragment current;
  bool pending_space = false;
  for (const auto& g : glyphs) {
    if (is_blank(g.text)) {
      if (!current.empty()) pending_space = true;
      continue;
    }
    if (!current.empty() && continues(current, g)) {
      const double gap = g.x0 - current.x1;
      extend(current, g, pending_space || gap > kImplicitSpace * std::max(g.size, 1.0));
    } else {
      if (!current.empty()) out.push_back(std::move(current));
      current = Fragment{};
      extend(current, g, false);
    }
    pending_space = false;
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

// Returns the x position of a vertical gutter separating two text columns,
// or a negative value for single-column pages.
double find_gutter(const std::vector<Fragment>& fragments, const pdf::Rect& media) {
  if (fragments.size() < 6) return -1;
  const int width = static_cast<int>(std::ceil(media.width()));
  if (width <= 0) return -1;
  std::vector<int> coverage(static_cast<std::size_t>(width) + 1, 0);
  for (const auto& f : fragments) {
    const int a = std::clamp(static_cast<int>(std::floor(f.x0 - media.x0)), 0, width);
    const int b = std::clamp(static_cast<int>(std::ceil(f.x1 - media.x0)), 0, width);
    for (int x = a; x <= b; ++x) ++coverage[static_cast<std::size_t>(x)];
  }
  const int lo = static_cast<int>(width * 0.3);
  const int hi = static_cast<int>(width * 0.7);
  int best_level = *std::min_element(coverage.begin() + lo, coverage.begin() + hi + 1);
  const int allowed = static_cast<int>(fragments.size() / 10);
  if (best_level > allowed) return -1;

  // Longest run at the minimum coverage level.
  int best_start = -1, best_len = 0;
  for (int x = lo; x <= hi;) {
    if (coverage[static_cast<std::size_t>(x)] != best_level) {
      ++x;
      continue;
    }
    int end = x;
    while (end + 1 <= hi && coverage[static_cast<std::size_t>(end + 1)] == best_level) ++end;
    if (end - x + 1 > best_len) {
      best_len = end - x + 1;
      best_start = x;
    }
    x = end + 1;
  }
  if (best_len < 4) return -1;
  const double gutter = media.x0 + best_start + best_len / 2.0;
  int left = 0, right = 0;
  for (const auto& f : fragments) {
    if (f.x1 <= gutter) ++left;
    if (f.x0 >= gutter) ++right;
  }
  if (left < 3 || right < 3) return -1;
  return gutter;
}

TextLine to_line(const Fragment& f, int page_index, const pdf::Rect& media) {
  TextLine line;
  line.page_index = page_index;
  line.bbox = BoundingBox{page_index, std::clamp(f.x0, media.x0, media.x1),
                          std::clamp(f.y0, media.y0, media.y1), std::clamp(f.x1, media.x0, media.x1),
                          std::clamp(f.y1, media.y0, media.y1)};
  line.text = collapse_whitespace(f.text);
  line.column_index = f.column;
  line.font_size = f.size;
  line.bold = f.chars > 0 && f.bold_chars * 2 > f.chars;
  return line;
}

std::string running_key(const std::string& text) {
  std::string key;
  for (char c : text) key.push_back(std::isdigit(static_cast<unsigned char>(c)) ? '#' : c);
  return key;
}

}  // namespace

std::vector<TextLine> build_page_lines(std::span<const pdf::Glyph> glyphs, int page_index,
                                       const pdf::Rect& media_box) {
  std::vector<Fragment> fragments = group_glyphs(glyphs);
  const double gutter = find_gutter(fragments, media_box);
  for (auto& f : fragments) f.column = (gutter > 0 && f.x0 >= gutter) ? 1 : 0;

  std::stable_sort(fragments.begin(), fragments.end(), [](const Fragment& a, const Fragment& b) {
    if (a.column != b.column) return a.column < b.column;
    return a.baseline > b.baseline;
  });

  // Cluster equal baselines within a column, then merge left to right.
  std::vector<Fragment> merged;
  std::size_t i = 0;
  while (i < fragments.size()) {
    std::size_t j = i + 1;
    const double tol = kBaselineTolerance * std::max(fragments[i].size, 1.0);
    while (j < fragments.size() && fragments[j].column == fragments[i].column &&
           fragments[i].baseline - fragments[j].baseline <= tol) {
      ++j;
    }
    std::vector<Fragment> row(fragments.begin() + static_cast<std::ptrdiff_t>(i),
                              fragments.begin() + static_cast<std::ptrdiff_t>(j));
    std::sort(row.begin(), row.end(), [](const Fragment& a, const Fragment& b) { return a.x0 < b.x0; });
    Fragment acc = row.front();
    for (std::size_t k = 1; k < row.size(); ++k) {
      const Fragment& next = row[k];
      const double size = std::max({acc.size, next.size, 1.0});
      const double gap = next.x0 - acc.x1;
      if (gap < kMaxJoinGap * size) {
        acc.text += ' ';
        acc.text += next.text;
        acc.x0 = std::min(acc.x0, next.x0);
        acc.x1 = std::max(acc.x1, next.x1);
        acc.y0 = std::min(acc.y0, next.y0);
        acc.y1 = std::max(acc.y1, next.y1);
        acc.size = std::max(acc.size, next.size);
        acc.chars += next.chars;
        acc.bold_chars += next.bold_chars;
      } else {
        merged.push_back(std::move(acc));
        acc = next;
      }
    }
    merged.push_back(std::move(acc));
    i = j;
  }

  std::vector<TextLine> lines;
  lines.reserve(merged.size());
  for (const auto& f : merged) {
    TextLine line = to_line(f, page_index, media_box);
    if (!line.text.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<TextLine> drop_running_lines(std::vector<TextLine> lines,
                                         std::span<const pdf::Rect> pages) {
  auto in_band = [&](const TextLine& line) {
    if (line.page_index < 0 || static_cast<std::size_t>(line.page_index) >= pages.size()) return false;
    const pdf::Rect& media = pages[static_cast<std::size_t>(line.page_index)];
    const double center = (line.bbox.y0 + line.bbox.y1) / 2.0;
    return center >= media.y1 - kRunningBand || center <= media.y0 + kRunningBand;
  };
  std::map<std::string, std::set<int>> pages_by_key;
  for (const auto& line : lines) {
    if (in_band(line)) pages_by_key[running_key(line.text)].insert(line.page_index);
  }
  std::erase_if(lines, [&](const TextLine& line) {
    if (!in_band(line)) return false;
    return static_cast<int>(pages_by_key[running_key(line.text)].size()) >= kRunningMinPages;
  });
  return lines;
}

DocumentLayout extract_layout(const pdf::Document& doc) {
  DocumentLayout layout;
  std::vector<TextLine> lines;
  for (std::size_t p = 0; p < doc.page_count(); ++p) {
    const pdf::Rect& media = doc.page(p).media_box;
    layout.pages.push_back(media);
    const auto glyphs = pdf::extract_glyphs(doc, p);
    auto page_lines = build_page_lines(glyphs, static_cast<int>(p), media);
    lines.insert(lines.end(), std::make_move_iterator(page_lines.begin()),
                 std::make_move_iterator(page_lines.end()));
  }
  if (lines.empty()) {
    throw EmptyDocument("no extractable text layer (scanned document?)");
  }
  layout.lines = drop_running_lines(std::move(lines), layout.pages);
  return layout;
}

DocumentLayout extract_layout(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw UnreadableDocument(path.string() + ": no such file");
  try {
    const pdf::Document doc = pdf::Document::open(path);
    return extract_layout(doc);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw UnreadableDocument(path.string() + ": " + e.what());
  }
}

std::vector<TextLine> extract_document(const std::filesystem::path& path) {
  return extract_layout(path).lines;
}

}  // namespace hallucite
