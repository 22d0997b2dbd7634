// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "hallucite/errors.hpp"
#include "hallucite/extractor.hpp"
#include "pdf_builder.hpp"

using namespace hallucite;
using namespace hallucite::testing;

namespace {

TextLine line(std::string text, double x = 72, double y = 700, int page = 0, double size = 9.5,
              bool bold = false) {
  TextLine l;
  l.page_index = page;
  l.bbox = {page, x, y, x + 200, y + size};
  l.text = std::move(text);
  l.font_size = size;
  l.bold = bold;
  return l;
}

ReferenceRegion region_of(std::vector<TextLine> lines) {
  ReferenceRegion r;
  r.heading_line = line("References", 72, 720, 0, 12, true);
  r.lines = std::move(lines);
  return r;
}

std::vector<std::string> texts(const std::vector<Citation>& cs) {
  std::vector<std::string> out;
  for (const auto& c : cs) out.push_back(c.raw_text);
  return out;
}

void check_raw_text_shape(const Citation& c) {
  CHECK_FALSE(c.raw_text.empty());
  CHECK(c.raw_text.find('\n') == std::string::npos);
  CHECK(c.raw_text.find("  ") == std::string::npos);
  CHECK(c.raw_text.front() != ' ');
  CHECK(c.raw_text.back() != ' ');
}

// Every region line appears in exactly one citation's box list.
void check_partition(const ReferenceRegion& region, const std::vector<Citation>& cs) {
  std::multiset<std::tuple<int, double, double>> boxes;
  for (const auto& c : cs) {
    for (const auto& b : c.bboxes) boxes.insert({b.page_index, b.x0, b.y0});
  }
  std::size_t total = 0;
  for (const auto& c : cs) total += c.bboxes.size();
  CHECK(total == region.lines.size());
  for (const auto& l : region.lines) {
    CHECK(boxes.count({l.bbox.page_index, l.bbox.x0, l.bbox.y0}) == 1);
  }
}

}  // namespace

TEST_CASE("line joining repairs hyphenation only between lowercase letters") {
  CHECK(join_lines("halluci-", "nated") == "hallucinated");
  CHECK(join_lines("  word ", " next ") == "word next");
  CHECK(join_lines("GPT-", "4 models") == "GPT- 4 models");
  CHECK(join_lines("Bi-", "LSTM") == "Bi- LSTM");
  CHECK(join_lines("über-", "prüfung") == "überprüfung");
  CHECK(join_lines("", "x") == "x");
  CHECK(join_lines("x", "") == "x");
  CHECK(join_lines("-", "x") == "- x");
}

TEST_CASE("reference headings") {
  for (const char* yes : {"References", "REFERENCES", "Bibliography", "7 References", "7. References",
                          "VI. REFERENCES", " References "}) {
    CHECK_MESSAGE(is_reference_heading(yes), yes);
  }
  for (const char* no : {"References to prior work", "See the references", "Reference-free", "Refs"}) {
    CHECK_FALSE_MESSAGE(is_reference_heading(no), no);
  }
}

TEST_CASE("the last heading starts the region and an appendix ends it") {
  std::vector<TextLine> lines = {
      line("Contents"),
      line("References", 72, 690),
      line("Body text mentions things.", 72, 680),
      line("References", 72, 500, 3, 12, true),
      line("[1] A. Author. 2020. First.", 72, 480, 3),
      line("[2] B. Author. 2021. Second.", 72, 468, 3),
      line("A Additional Results", 72, 300, 4, 12, true),
      line("Appendix text.", 72, 280, 4),
  };
  const ReferenceRegion r = locate_reference_section(lines);
  CHECK(r.heading_line.page_index == 3);
  REQUIRE(r.lines.size() == 2);
  CHECK(r.lines[0].text == "[1] A. Author. 2020. First.");

  lines[6] = line("Appendix", 72, 300, 4, 9.5, false);
  CHECK(locate_reference_section(lines).lines.size() == 2);

  std::vector<TextLine> none = {line("Introduction"), line("Conclusion")};
  CHECK_THROWS_AS(locate_reference_section(none), NoReferenceSection);
  CHECK_THROWS_AS(locate_reference_section(std::vector<TextLine>{}), NoReferenceSection);
}

TEST_CASE("bracket markers split entries and are stripped") {
  const auto region = region_of({
      line("[1] A. Author. 2020. First title.", 72, 680),
      line("[2] B. Author. 2021. Second title that wraps", 72, 668),
      line("onto another line.", 82, 656),
      line("[3] C. Author. 2022. Third title.", 72, 644),
  });
  const auto cs = segment_entries(region);
  CHECK(texts(cs) == std::vector<std::string>{"A. Author. 2020. First title.",
                                              "B. Author. 2021. Second title that wraps onto another line.",
                                              "C. Author. 2022. Third title."});
  CHECK(cs[1].bboxes.size() == 2);
  check_partition(region, cs);
}

TEST_CASE("numbered markers must form a sequence") {
  const auto region = region_of({
      line("1. A. Author. First title. In Proc. of X, pages", 72, 680),
      line("12. Second line starting with a number.", 72, 668),
      line("2. B. Author. Second title.", 72, 656),
  });
  const auto cs = segment_entries(region);
  REQUIRE(cs.size() == 2);
  CHECK(cs[0].raw_text == "A. Author. First title. In Proc. of X, pages 12. Second line starting with a number.");
  CHECK(cs[1].raw_text == "B. Author. Second title.");
}

TEST_CASE("hanging indent and author-year starts") {
  const auto hanging = region_of({
      line("Doe, J. 2020. A title", 72, 680),
      line("continued here.", 82, 668),
      line("Roe, R. 2019. Another.", 72, 656),
  });
  CHECK(texts(segment_entries(hanging)) ==
        std::vector<std::string>{"Doe, J. 2020. A title continued here.", "Roe, R. 2019. Another."});

  const auto flush = region_of({
      line("Doe, J. 2020. A title that", 72, 680),
      line("continues here.", 72, 668),
      line("Roe, R. 2019. Another.", 72, 656),
  });
  CHECK(texts(segment_entries(flush)) ==
        std::vector<std::string>{"Doe, J. 2020. A title that continues here.", "Roe, R. 2019. Another."});

  CHECK(segment_entries(region_of({})).empty());
}

TEST_CASE("segmenting single-line entries is stable") {
  const auto region = region_of({
      line("[1] A. Author. 2020. First.", 72, 680),
      line("[2] B. Author. 2021. Second.", 72, 668),
  });
  const auto once = segment_entries(region);
  std::vector<TextLine> again;
  double y = 680;
  int n = 1;
  for (const auto& c : once) {
    again.push_back(line("[" + std::to_string(n++) + "] " + c.raw_text, 72, y));
    y -= 12;
  }
  CHECK(texts(segment_entries(region_of(again))) == texts(once));
}

TEST_CASE("running headers and page numbers are dropped") {
  std::vector<pdf::Rect> pages(4);
  std::vector<TextLine> lines;
  for (int p = 0; p < 4; ++p) {
    lines.push_back(line("Proceedings of a Workshop, page " + std::to_string(p + 1), 72, 770, p));
    lines.push_back(line("Body " + std::to_string(p), 72, 400, p));
    lines.push_back(line(std::to_string(100 + p), 300, 20, p));
  }
  lines.push_back(line("Unique top line", 72, 770, 0));
  const auto kept = drop_running_lines(lines, pages);
  std::vector<std::string> got;
  for (const auto& l : kept) got.push_back(l.text);
  CHECK(got == std::vector<std::string>{"Body 0", "Body 1", "Body 2", "Body 3", "Unique top line"});
}

TEST_CASE("page lines follow column reading order") {
  std::vector<pdf::Glyph> glyphs;
  auto put = [&](std::string text, double x, double baseline) {
    for (char ch : text) {
      pdf::Glyph g;
      g.text = std::string(1, ch);
      g.x0 = x;
      g.x1 = x + 5;
      g.baseline = baseline;
      g.y0 = baseline - 2;
      g.y1 = baseline + 7;
      g.size = 9.5;
      glyphs.push_back(g);
      x += 5;
    }
  };
  for (int i = 0; i < 20; ++i) {
    put("left" + std::to_string(i), 54, 700 - 12 * i);
    put("right" + std::to_string(i), 315, 700 - 12 * i);
  }
  const auto lines = build_page_lines(glyphs, 0, pdf::Rect{});
  REQUIRE(lines.size() == 40);
  for (int i = 0; i < 20; ++i) {
    CHECK(lines[static_cast<std::size_t>(i)].text == "left" + std::to_string(i));
    CHECK(lines[static_cast<std::size_t>(i)].column_index == 0);
    CHECK(lines[static_cast<std::size_t>(20 + i)].text == "right" + std::to_string(i));
    CHECK(lines[static_cast<std::size_t>(20 + i)].column_index == 1);
  }
}

TEST_CASE("golden fixtures extract every entry exactly") {
  const auto dir = scratch_dir("extractor");
  int index = 0;
  int cross_page_total = 0;
  for (const auto& spec : golden_specs()) {
    CAPTURE(index);
    const BuiltPaper built = build_paper(spec);
    const auto path = dir / ("golden" + std::to_string(index++) + ".pdf");
    write_file(path, built.bytes);

    const DocumentLayout layout = extract_layout(path);
    CHECK(layout.pages.size() == static_cast<std::size_t>(built.page_count));
    const ReferenceRegion region = locate_reference_section(layout.lines);
    const auto cs = segment_entries(region);
    CHECK(texts(cs) == spec.references);
    check_partition(region, cs);
    for (const auto& c : cs) {
      check_raw_text_shape(c);
      CHECK(c.status == CitationStatus::extracted);
      std::set<int> pages;
      for (const auto& b : c.bboxes) {
        CHECK(b.well_formed());
        CHECK(b.page_index < built.page_count);
        pages.insert(b.page_index);
      }
      cross_page_total += pages.size() > 1;
    }
    CHECK(texts(extract_references(path)) == texts(cs));
    CHECK(extract_references(path) == cs);
  }
  CHECK(cross_page_total > 0);
  std::filesystem::remove_all(dir);
}

TEST_CASE("hyphenated line breaks are repaired in the extracted text") {
  Corpus corpus(77);
  PaperSpec spec;
  spec.columns = 2;
  spec.style = RefStyle::ieee;
  for (int i = 0; i < 40; ++i) {
    spec.references.push_back(format_reference(corpus.reference(corpus.title()), spec.style));
  }
  const BuiltPaper built = build_paper(spec);
  REQUIRE(built.hyphenated_breaks > 0);
  const auto dir = scratch_dir("hyphen");
  write_file(dir / "p.pdf", built.bytes);
  CHECK(texts(extract_references(dir / "p.pdf")) == spec.references);
  std::filesystem::remove_all(dir);
}

TEST_CASE("document-level failures") {
  const auto dir = scratch_dir("failures");
  write_file(dir / "enc.pdf", encrypted_pdf());
  write_file(dir / "scan.pdf", textless_pdf(3));
  write_file(dir / "junk.pdf", "this is not a pdf");
  PaperSpec spec;
  spec.heading = "Works Consulted";
  spec.toc_mention = false;
  spec.references = {"A. Author. 2020. A title. In Proc. of X."};
  write_file(dir / "nohead.pdf", build_paper(spec).bytes);

  CHECK_THROWS_AS(extract_layout(dir / "enc.pdf"), UnreadableDocument);
  CHECK_THROWS_AS(extract_layout(dir / "junk.pdf"), UnreadableDocument);
  CHECK_THROWS_AS(extract_layout(dir / "missing.pdf"), UnreadableDocument);
  CHECK_THROWS_AS(extract_layout(dir / "scan.pdf"), EmptyDocument);
  CHECK_THROWS_AS(extract_references(dir / "nohead.pdf"), NoReferenceSection);
  std::filesystem::remove_all(dir);
}
