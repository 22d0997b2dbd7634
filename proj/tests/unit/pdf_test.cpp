// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "hallucite/errors.hpp"
#include "hallucite/pdf/document.hpp"
#include "hallucite/pdf/encoding.hpp"
#include "hallucite/pdf/lexer.hpp"
#include "hallucite/pdf/text.hpp"
#include "hallucite/pdf/writer.hpp"
#include "pdf_builder.hpp"

using namespace hallucite;
using namespace hallucite::pdf;

namespace {

Object parse_one(std::string_view text) {
  Parser p(text);
  auto obj = p.parse_object();
  REQUIRE(obj.has_value());
  return *obj;
}

Object random_object(std::mt19937_64& rng, int depth) {
  const int kind = static_cast<int>(rng() % (depth > 0 ? 9 : 7));
  switch (kind) {
    case 0: return Object(Null{});
    case 1: return Object(rng() % 2 == 0);
    case 2: return Object(static_cast<std::int64_t>(rng() % 200001) - 100000);
    case 3: return Object(static_cast<double>(static_cast<int>(rng() % 8001) - 4000) + 0.25);
    case 4: {
      std::string bytes;
      for (std::size_t n = rng() % 12; n > 0; --n) bytes.push_back(static_cast<char>(rng() % 256));
      return Object(String{bytes, rng() % 2 == 0});
    }
    case 5: {
      std::string name;
      for (std::size_t n = 1 + rng() % 8; n > 0; --n) name.push_back(static_cast<char>(0x21 + rng() % 0x5E));
      return make_name(name);
    }
    case 6: return Object(Ref{static_cast<int>(1 + rng() % 500), 0});
    case 7: {
      Array a;
      for (std::size_t n = rng() % 5; n > 0; --n) a.items.push_back(random_object(rng, depth - 1));
      return Object(std::move(a));
    }
    default: {
      Dict d;
      for (std::size_t n = rng() % 5; n > 0; --n) {
        d.set("K" + std::to_string(rng() % 1000), random_object(rng, depth - 1));
      }
      return Object(std::move(d));
    }
  }
}

}  // namespace

TEST_CASE("parser reads the basic object kinds") {
  CHECK(parse_one("42").integer() == 42);
  CHECK(parse_one("-3.5").number() == doctest::Approx(-3.5));
  CHECK(parse_one(".5").number() == doctest::Approx(0.5));
  CHECK(parse_one("true") == Object(true));
  CHECK(parse_one("null").is_null());
  CHECK(parse_one("/A#20B").name() == "A B");
  CHECK(parse_one("(a\\(b\\)c (nested) \\101\\\nx)").as<String>()->bytes == "a(b)c (nested) Ax");
  CHECK(parse_one("<48 65 6C6C 6F>").as<String>()->bytes == "Hello");
  CHECK(parse_one("<4>").as<String>()->bytes == std::string("\x40", 1));
  CHECK(parse_one("12 0 R") == Object(Ref{12, 0}));

  const Object arr = parse_one("[1 2 0 R /N (s)]");
  REQUIRE(arr.as<Array>());
  CHECK(arr.as<Array>()->items.size() == 4);
  CHECK(arr.as<Array>()->items[1] == Object(Ref{2, 0}));
  const Object dict = parse_one("<< /Type /Page /Kids [3 0 R] % comment\n /Count 1 >>");
  REQUIRE(dict.as<Dict>());
  CHECK(dict.as<Dict>()->get("Type")->name() == "Page");
  CHECK(dict.as<Dict>()->get("Count")->integer() == 1);

  Parser ops("1 0 0 1 72 700 Tm (Hi) Tj");
  for (int i = 0; i < 6; ++i) CHECK(ops.parse_object().has_value());
  CHECK_FALSE(ops.parse_object().has_value());
  CHECK(ops.accept_keyword("Tm"));
  CHECK(ops.parse_object().has_value());
  CHECK(ops.read_keyword() == std::optional<std::string>("Tj"));
  CHECK(ops.at_end());
}

TEST_CASE("serialize and parse are inverse on random objects") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 3000; ++i) {
    const Object obj = random_object(rng, 3);
    const std::string text = serialize(obj);
    Parser p(text);
    const auto back = p.parse_object();
    REQUIRE(back.has_value());
    CHECK(*back == obj);
  }
}

TEST_CASE("flate streams round trip through the filter chain") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    std::string data;
    for (std::size_t n = rng() % 5000; n > 0; --n) data.push_back(static_cast<char>('a' + rng() % 4));
    Dict d;
    d.set("Filter", make_name("FlateDecode"));
    CHECK(decode_filters(d, deflate(data)) == data);
  }
  Dict none;
  CHECK(decode_filters(none, "raw") == "raw");
}

TEST_CASE("WinAnsi code points round trip") {
  for (int code = 0x20; code < 0x100; ++code) {
    if (code == 0x7F || code == 0x81 || code == 0x8D || code == 0x8F || code == 0x90 || code == 0x9D || code == 0xAD) continue;
    const char32_t cp = winansi_to_unicode(static_cast<unsigned char>(code));
    CAPTURE(code);
    CHECK(unicode_to_winansi(cp) == std::optional<unsigned char>(static_cast<unsigned char>(code)));
  }
  CHECK(winansi_to_unicode(0x93) == U'“');
  CHECK(winansi_to_unicode(0x96) == U'–');
  CHECK_FALSE(unicode_to_winansi(U'α').has_value());
  CHECK(glyph_name_to_unicode("fi") == U'ﬁ');
  CHECK(glyph_name_to_unicode("uni00E9") == U'é');
}

TEST_CASE("written documents reopen with their pages and text") {
  testing::TextItem a{72, 700, 12, false, "Hello Zürich"};
  testing::TextItem b{300, 650, 10, true, "Bold line"};
  const std::string bytes = testing::build_text_pdf({{a, b}, {{72, 500, 9, false, "page two"}}});
  const Document doc = Document::from_bytes(bytes);
  REQUIRE(doc.page_count() == 2);
  CHECK(doc.page(0).media_box.width() == doctest::Approx(612));

  const auto glyphs = extract_glyphs(doc, 0);
  std::string first, second;
  double last_x = -1;
  for (const auto& g : glyphs) {
    if (g.baseline > 690) {
      first += g.text;
      CHECK(g.x0 >= last_x);
      last_x = g.x0;
      CHECK(g.size == doctest::Approx(12));
      CHECK_FALSE(g.bold);
    } else {
      second += g.text;
      CHECK(g.bold);
    }
  }
  CHECK(first == "Hello Zürich");
  CHECK(second == "Bold line");
  CHECK(glyphs.front().x0 == doctest::Approx(72));
  const double width = testing::text_width("Hello Zürich", 12, false);
  CHECK(glyphs[11].x1 == doctest::Approx(72 + width).epsilon(0.001));

  std::string page2;
  for (const auto& g : extract_glyphs(doc, 1)) page2 += g.text;
  CHECK(page2 == "page two");
}

TEST_CASE("unreadable inputs are reported as such") {
  CHECK_THROWS_AS(Document::from_bytes("not a pdf"), UnreadableDocument);
  CHECK_THROWS_AS(Document::from_bytes("%PDF-1.4\n%%EOF"), UnreadableDocument);
  CHECK_THROWS_AS(Document::from_bytes(testing::encrypted_pdf()), UnreadableDocument);
  CHECK_THROWS_AS(Document::open("/nonexistent/file.pdf"), UnreadableDocument);

  std::string truncated = testing::build_text_pdf({{{72, 700, 12, false, "x"}}});
  truncated.resize(truncated.size() / 3);
  CHECK_THROWS_AS(Document::from_bytes(truncated), UnreadableDocument);
}

TEST_CASE("writer output carries a consistent xref table") {
  Writer w;
  const Ref pages = w.reserve();
  Dict page;
  page.set("Type", make_name("Page"));
  page.set("Parent", Object(pages));
  const Ref page_ref = w.add(Object(page));
  Dict tree;
  tree.set("Type", make_name("Pages"));
  tree.set("Kids", Object(Array{{Object(page_ref)}}));
  tree.set("Count", Object(1));
  w.set(pages, Object(tree));
  Dict catalog;
  catalog.set("Type", make_name("Catalog"));
  catalog.set("Pages", Object(pages));
  const Ref root = w.add(Object(catalog));
  const std::string bytes = w.finish(root);

  const auto xref = bytes.rfind("\nxref") + 1;
  REQUIRE(xref != 0);
  const auto startxref = bytes.rfind("startxref");
  CHECK(std::stoul(bytes.substr(startxref + 10)) == xref);
  for (int num = 1; num <= 3; ++num) {
    const std::string marker = std::to_string(num) + " 0 obj";
    const auto at = bytes.find(marker);
    REQUIRE(at != std::string::npos);
    char expected[11];
    std::snprintf(expected, sizeof expected, "%010zu", at);
    CHECK(bytes.find(std::string(expected) + " 00000 n", xref) != std::string::npos);
  }
  CHECK(Document::from_bytes(bytes).page_count() == 1);
}
