// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <set>

#include "hallucite/citation.hpp"
#include "hallucite/errors.hpp"
#include "hallucite/utf8.hpp"
#include "oracle.hpp"

using namespace hallucite;
using nlohmann::json;

namespace {

constexpr CitationStatus kStatuses[] = {CitationStatus::extracted, CitationStatus::recognized,
                                        CitationStatus::verified, CitationStatus::unverifiable};

std::string random_words(std::mt19937_64& rng, std::size_t words) {
  static const std::vector<std::string> pool = {"Deep", "graph", "Müller", "learning", "2021",
                                                "pp.", "“quoted”", "naïve", "Zürich", "of",
                                                "Transformers", "(eds.)", "12–19", "αβγ"};
  std::string out;
  for (std::size_t i = 0; i < words; ++i) {
    if (i) out += ' ';
    out += pool[rng() % pool.size()];
  }
  return out;
}

Citation random_citation(std::mt19937_64& rng) {
  Citation c;
  c.raw_text = random_words(rng, 1 + rng() % 12);
  for (std::size_t n = rng() % 4; n > 0; --n) {
    BoundingBox b;
    b.page_index = static_cast<int>(rng() % 20);
    b.x0 = static_cast<double>(rng() % 500) / 4.0;
    b.y0 = static_cast<double>(rng() % 700) / 4.0;
    b.x1 = b.x0 + static_cast<double>(rng() % 200) / 8.0;
    b.y1 = b.y0 + static_cast<double>(rng() % 40) / 8.0;
    c.bboxes.push_back(b);
  }
  std::size_t pos = 0;
  while (pos < c.raw_text.size() && rng() % 3) {
    std::size_t end = c.raw_text.find(' ', pos);
    if (end == std::string::npos) end = c.raw_text.size();
    LabeledSpan s;
    s.tag = kAllFieldTags[rng() % kFieldTagCount];
    s.start_char = pos;
    s.end_char = end;
    s.text = c.raw_text.substr(pos, end - pos);
    c.spans.push_back(s);
    pos = end + 1;
  }
  for (std::size_t n = rng() % 4; n > 0; --n) {
    c.fields[kAllFieldTags[rng() % kFieldTagCount]] = random_words(rng, 1 + rng() % 3);
  }
  if (rng() % 2) c.title = random_words(rng, 3);
  switch (rng() % 3) {
    case 0: break;
    case 1: c.match = MatchResult{true, 0.9 + static_cast<double>(rng() % 100) / 1000.0, "dblp", "id-7", "A title"}; break;
    default: c.match = MatchResult{false, static_cast<double>(rng() % 900) / 1000.0, "arxiv", "", ""}; break;
  }
  c.status = kStatuses[rng() % 4];
  return c;
}

}  // namespace

TEST_CASE("field tags form a closed set of nineteen names") {
  std::set<std::string> names;
  for (FieldTag t : kAllFieldTags) {
    const std::string name(to_string(t));
    names.insert(name);
    CHECK(parse_field_tag(name) == t);
  }
  CHECK(names.size() == 19);
  CHECK(names.count("other") == 1);
  CHECK_THROWS_AS(parse_field_tag("venue"), InvalidRecord);
  CHECK_THROWS_AS(parse_field_tag("Title"), InvalidRecord);
}

TEST_CASE("status transitions only move forward") {
  using S = CitationStatus;
  const std::set<std::pair<S, S>> allowed = {
      {S::extracted, S::extracted},     {S::extracted, S::recognized},
      {S::extracted, S::verified},      {S::extracted, S::unverifiable},
      {S::recognized, S::recognized},   {S::recognized, S::verified},
      {S::recognized, S::unverifiable}, {S::verified, S::verified},
      {S::unverifiable, S::unverifiable},
  };
  for (S from : kStatuses) {
    for (S to : kStatuses) {
      const bool ok = allowed.count({from, to}) == 1;
      CHECK(is_forward_transition(from, to) == ok);
      Citation c;
      c.raw_text = "x";
      c.status = from;
      if (ok) {
        c.advance(to);
        CHECK(c.status == to);
      } else {
        CHECK_THROWS_AS(c.advance(to), StatusRegression);
        CHECK(c.status == from);
      }
    }
  }
  for (S s : kStatuses) CHECK(parse_status(to_string(s)) == s);
  CHECK_THROWS_AS(parse_status("flagged"), InvalidRecord);
}

TEST_CASE("bounding boxes check their corner order") {
  CHECK(BoundingBox{0, 1, 2, 3, 4}.well_formed());
  CHECK(BoundingBox{0, 1, 1, 1, 1}.well_formed());
  CHECK_FALSE(BoundingBox{-1, 1, 2, 3, 4}.well_formed());
  CHECK_FALSE(BoundingBox{0, 3, 2, 1, 4}.well_formed());
  CHECK_FALSE(BoundingBox{0, 1, 4, 3, 2}.well_formed());
}

TEST_CASE("record parsing accepts the minimal form") {
  const Citation c = citation_from_record(json{{"raw_text", "R"}});
  CHECK(c.raw_text == "R");
  CHECK(c.title.empty());
  CHECK(c.bboxes.empty());
  CHECK_FALSE(c.match.has_value());
  CHECK(c.status == CitationStatus::extracted);
}

TEST_CASE("record parsing rejects malformed input") {
  CHECK_THROWS_AS(citation_from_record(json::object()), MissingField);
  CHECK_THROWS_AS(citation_from_record(json{{"raw_text", ""}}), MissingField);
  CHECK_THROWS_AS(citation_from_record(json{{"raw_text", 3}}), MissingField);
  CHECK_THROWS_AS(citation_from_record(json::array()), InvalidRecord);
  CHECK_THROWS_AS(citation_from_record(json{{"raw_text", "R"}, {"doi", "x"}}), UnknownField);

  json bad_box = {{"raw_text", "R"},
                  {"bboxes", {{{"page_index", 0}, {"x0", 5}, {"y0", 0}, {"x1", 1}, {"y1", 1}}}}};
  CHECK_THROWS_AS(citation_from_record(bad_box), InvalidRecord);
  json extra_box_key = {{"raw_text", "R"},
                        {"bboxes",
                         {{{"page_index", 0}, {"x0", 0}, {"y0", 0}, {"x1", 1}, {"y1", 1}, {"z", 1}}}}};
  CHECK_THROWS_AS(citation_from_record(extra_box_key), UnknownField);
  json missing_box_key = {{"raw_text", "R"}, {"bboxes", {{{"page_index", 0}}}}};
  CHECK_THROWS_AS(citation_from_record(missing_box_key), MissingField);

  json bad_span = {{"raw_text", "Alpha Beta"},
                   {"spans", {{{"tag", "title"}, {"start_char", 0}, {"end_char", 5}, {"text", "Beta"}}}}};
  CHECK_THROWS_AS(citation_from_record(bad_span), InvalidRecord);
  json empty_span = {{"raw_text", "Alpha"},
                     {"spans", {{{"tag", "title"}, {"start_char", 2}, {"end_char", 2}, {"text", ""}}}}};
  CHECK_THROWS_AS(citation_from_record(empty_span), InvalidRecord);
  json past_end = {{"raw_text", "Alpha"},
                   {"spans", {{{"tag", "title"}, {"start_char", 2}, {"end_char", 9}, {"text", "pha"}}}}};
  CHECK_THROWS_AS(citation_from_record(past_end), InvalidRecord);
  json bad_tag = {{"raw_text", "Alpha"},
                  {"spans", {{{"tag", "venue"}, {"start_char", 0}, {"end_char", 5}, {"text", "Alpha"}}}}};
  CHECK_THROWS_AS(citation_from_record(bad_tag), InvalidRecord);

  CHECK_THROWS_AS(citation_from_record(json{{"raw_text", "R"}, {"fields", {{"venue", "x"}}}}),
                  InvalidRecord);
  CHECK_THROWS_AS(citation_from_record(json{{"raw_text", "R"}, {"title", 4}}), InvalidRecord);
  CHECK_THROWS_AS(citation_from_record(json{{"raw_text", "R"}, {"status", "done"}}), InvalidRecord);
  CHECK_THROWS_AS(
      citation_from_record(json{{"raw_text", "R"}, {"match", {{"matched", true}, {"score", 1.5}, {"db_name", "d"}}}}),
      InvalidRecord);
  CHECK_THROWS_AS(
      citation_from_record(json{{"raw_text", "R"}, {"match", {{"matched", true}, {"score", 1.0}}}}),
      InvalidRecord);
  CHECK_THROWS_AS(citation_from_record(json{{"raw_text", "R"},
                                            {"match", {{"matched", false}, {"score", 0.2}, {"matched_id", "x"}}}}),
                  InvalidRecord);
}

TEST_CASE("record round trip reproduces every field") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Citation c = random_citation(rng);
    const json record = citation_to_record(c);
    CHECK(citation_from_record(record) == c);
    CHECK(citation_from_record(json::parse(record.dump())) == c);
  }
}

TEST_CASE("rendering") {
  Citation r;
  r.raw_text = "R";
  CHECK(render_citation(r, Verbosity::minimal) == "R");

  Citation c;
  c.raw_text = "Yiming Li, Ann Lee. 2024. Two heads are better than one. In Proc. of X.";
  c.title = "Two heads are better than one";
  c.fields[FieldTag::author] = "Yiming Li, Ann Lee";
  c.fields[FieldTag::title] = c.title;
  c.fields[FieldTag::date] = "2024";
  c.match = MatchResult{false, 0.41, "dblp", "", ""};
  c.bboxes = {{3, 54, 100, 297, 110}, {4, 54, 700, 200, 710}};
  c.status = CitationStatus::recognized;
  c.advance(CitationStatus::verified);

  const std::string full = render_citation(c, Verbosity::full);
  CHECK(full.find("\"author\": \"Yiming Li, Ann Lee\"") != std::string::npos);
  CHECK(full.find("\"title\": \"Two heads are better than one\"") != std::string::npos);
  CHECK(full.find("page 4: [54.00, 100.00, 297.00, 110.00]") != std::string::npos);
  CHECK(full.find("page 5: [54.00, 700.00, 200.00, 710.00]") != std::string::npos);
  CHECK(full.find("0.41") != std::string::npos);
  CHECK(render_citation(c, Verbosity::full) == full);

  const std::string normal = render_citation(c, Verbosity::normal);
  CHECK(normal.rfind(c.raw_text, 0) == 0);
  CHECK(normal.find("title: Two heads") != std::string::npos);
}

TEST_CASE("field record puts author and title first") {
  Citation c;
  c.raw_text = "x";
  c.fields[FieldTag::pages] = "1-2";
  c.fields[FieldTag::booktitle] = "Proc";
  c.fields[FieldTag::other] = "junk";
  const auto rec = field_record(c);
  std::vector<std::string> keys;
  for (const auto& [k, _] : rec.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"author", "title", "booktitle", "pages"});
  CHECK(rec["author"] == "");
}

TEST_CASE("utf8 helpers agree with an independent decoder") {
  const std::vector<std::string> samples = {"", "plain", "Müller–Zürich", "“q”", "αβγ", "𝔘nicode",
                                            "bad\xff" "byte", "\xe2\x80", "\xc3"};
  for (const auto& s : samples) {
    CHECK(utf8::decode(s) == testing::oracle::decode(s));
    CHECK(utf8::length(s) == testing::oracle::decode(s).size());
  }
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    std::u32string cps;
    for (std::size_t n = rng() % 20; n > 0; --n) {
      char32_t cp = static_cast<char32_t>(rng() % 0x10FFFF);
      if (cp >= 0xD800 && cp <= 0xDFFF) cp = 'x';
      cps.push_back(cp);
    }
    const std::string bytes = utf8::encode(cps);
    CHECK(utf8::decode(bytes) == cps);
    CHECK(testing::oracle::decode(bytes) == cps);
  }
}
