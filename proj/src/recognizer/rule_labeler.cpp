// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <unordered_set>

#include "hallucite/recognizer.hpp"
#include "hallucite/utf8.hpp"

namespace hallucite {

namespace {

struct Range {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
  bool empty() const { return begin >= end; }
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool one_of(const std::string& s, std::initializer_list<std::string_view> words) {
  return std::find(words.begin(), words.end(), s) != words.end();
}

// Period-terminated abbreviations that never end a segment.
bool is_abbreviation(const std::string& w) {
  static const std::unordered_set<std::string> kAbbrev = {
      "al",    "eds",   "ed",   "vol",    "vols",  "nos",   "pp",    "proc",  "conf",
      "intl",  "trans", "dept", "univ",   "inc",   "ltd",   "jr",    "sr",    "vs",
      "etc",   "fig",   "eq",   "sec",    "ch",    "assoc", "comput", "linguist", "natl",
      "acad",  "annu",  "symp", "intell", "syst",  "lett",  "e.g",   "i.e",   "cf",
      "approx", "jan",  "feb",  "apr",    "jun",   "jul",   "aug",   "sep",   "sept",
      "oct",   "nov",   "dec",  "ph.d",   "m.sc",  "int",   "no",
  };
  return kAbbrev.contains(w);
}

bool is_month(const std::string& w) {
  static const std::unordered_set<std::string> kMonths = {
      "january", "february", "march", "april", "may", "june", "july", "august",
      "september", "october", "november", "december", "jan", "feb", "mar", "apr",
      "jun", "jul", "aug", "sep", "sept", "oct", "nov", "dec",
  };
  return kMonths.contains(w);
}

bool is_year(const Token& t) {
  const std::string& s = t.text;
  if (s.size() < 4 || s.size() > 5) return false;
  if (!std::all_of(s.begin(), s.begin() + 4, [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return false;
  }
  if (s.size() == 5 && !(s[4] >= 'a' && s[4] <= 'z')) return false;
  const int year = std::stoi(s.substr(0, 4));
  return year >= 1900 && year <= 2099;
}

bool is_initial(const Token& t) {
  return !t.shape.punctuation && utf8::length(t.text) == 1 && t.shape.casing == CaseShape::upper;
}

bool has_alpha(const Token& t) { return t.shape.casing != CaseShape::none; }

bool is_capitalized(const Token& t) {
  return t.shape.casing == CaseShape::title || t.shape.casing == CaseShape::upper ||
         (t.shape.casing == CaseShape::mixed && !t.text.empty() &&
          std::isupper(static_cast<unsigned char>(t.text[0])));
}

bool ends_with_terminal(const Token& t) {
  return !t.text.empty() && (t.text.back() == '?' || t.text.back() == '!');
}

bool is_open_quote(const Token& t) { return t.text == "\xE2\x80\x9C" || t.text == "\""; }
bool is_close_quote(const Token& t) { return t.text == "\xE2\x80\x9D" || t.text == "\""; }

// Splits the token range into period-delimited segments. A segment includes
// its terminating token.
std::vector<Range> split_segments(std::span<const Token> tokens, Range range) {
  std::vector<Range> out;
  std::size_t start = range.begin;
  for (std::size_t i = range.begin; i < range.end; ++i) {
    const Token& t = tokens[i];
    bool boundary = false;
    if (t.text == "." && t.shape.followed_by_space) {
      const bool after_abbrev =
          i > range.begin && !tokens[i - 1].shape.punctuation &&
          (is_initial(tokens[i - 1]) || is_abbreviation(lower(tokens[i - 1].text)));
      boundary = !after_abbrev;
    } else if (!t.shape.punctuation && ends_with_terminal(t) && t.shape.followed_by_space) {
      boundary = true;
    }
    if (boundary) {
      out.push_back(Range{start, i + 1});
      start = i + 1;
    }
  }
  if (start < range.end) out.push_back(Range{start, range.end});
  return out;
}

// Range without leading/trailing punctuation tokens.
Range trim_punct(std::span<const Token> tokens, Range r) {
  while (r.begin < r.end && tokens[r.begin].shape.punctuation) ++r.begin;
  while (r.end > r.begin && tokens[r.end - 1].shape.punctuation) --r.end;
  return r;
}

bool is_date_only(std::span<const Token> tokens, Range r) {
  bool year = false;
  for (std::size_t i = r.begin; i < r.end; ++i) {
    const Token& t = tokens[i];
    if (t.shape.punctuation) continue;
    if (is_year(t)) {
      year = true;
      continue;
    }
    if (is_month(lower(t.text))) continue;
    if (t.shape.all_digits && t.text.size() <= 2) continue;  // day of month
    return false;
  }
  return year;
}

bool looks_like_authors(std::span<const Token> tokens, Range r) {
  static const std::unordered_set<std::string> kConnectors = {
      "and", "&", "et", "al", "others", "van", "von", "de", "der", "den", "da", "di",
      "la", "le", "du", "del", "della", "dos", "bin", "ibn", "y", "zu", "ter", "mc",
  };
  int words = 0, namelike = 0;
  for (std::size_t i = r.begin; i < r.end; ++i) {
    const Token& t = tokens[i];
    if (t.shape.punctuation || is_year(t)) continue;
    const std::string w = lower(t.text);
    if (w == "in" && i == r.begin) return false;
    ++words;
    if (is_capitalized(t) || kConnectors.contains(w)) ++namelike;
  }
  return words > 0 && namelike * 10 >= words * 9;
}

bool starts_venue(std::span<const Token> tokens, Range r) {
  const Range t = trim_punct(tokens, r);
  if (t.empty()) return false;
  const std::string first = lower(tokens[t.begin].text);
  if (first == "in" && t.begin + 1 < t.end) return true;
  return one_of(first, {"proceedings", "proc", "journal", "arxiv", "transactions", "corr",
                        "advances", "technical", "tech"});
}

std::vector<Range> split_commas(std::span<const Token> tokens, Range r) {
  std::vector<Range> out;
  std::size_t start = r.begin;
  for (std::size_t i = r.begin; i < r.end; ++i) {
    if (tokens[i].text == "," || tokens[i].text == ";") {
      out.push_back(Range{start, i});
      start = i + 1;
    }
  }
  out.push_back(Range{start, r.end});
  return out;
}

void tag_range(std::vector<FieldTag>& tags, Range r, FieldTag tag) {
  for (std::size_t i = r.begin; i < r.end; ++i) tags[i] = tag;
}

bool contains_word(std::span<const Token> tokens, Range r,
                   std::initializer_list<std::string_view> words) {
  for (std::size_t i = r.begin; i < r.end; ++i) {
    if (one_of(lower(tokens[i].text), words)) return true;
  }
  return false;
}

bool is_number_like(const Token& t) {
  if (t.text.empty() || !t.shape.has_digit) return false;
  // digits with optional dash variants between them ("12", "1-10", "1–10")
  std::size_t pos = 0;
  while (pos < t.text.size()) {
    const char32_t cp = utf8::next(t.text, pos);
    const bool ok = (cp >= '0' && cp <= '9') || cp == '-' || cp == 0x2013 || cp == 0x2014 ||
                    cp == 0x2012 || cp == 0x2212;
    if (!ok) return false;
  }
  return true;
}

bool is_range(const Token& t) { return is_number_like(t) && !t.shape.all_digits; }

class Tagger {
 public:
  Tagger(std::span<const Token> tokens) : tokens_(tokens), tags_(tokens.size(), FieldTag::other) {}

  std::vector<FieldTag> run() {
    const Range all{0, tokens_.size()};
    if (auto quoted = find_quoted_title()) {
      const Range before{0, quoted->begin};
      const Range inner = trim_punct(tokens_, *quoted);
      tag_range(tags_, inner, FieldTag::title);
      title_ = inner;
      if (!trim_punct(tokens_, before).empty()) label_authors(before);
      std::size_t after = quoted->end;
      while (after < tokens_.size() && (tokens_[after].shape.punctuation)) ++after;
      label_tail(split_segments(tokens_, Range{after, tokens_.size()}), true);
      mark_dates(all);
      return tags_;
    }

    const auto segments = split_segments(tokens_, all);
    std::size_t s = 0;
    if (!segments.empty() && looks_like_authors(tokens_, segments[0]) &&
        !starts_venue(tokens_, segments[0])) {
      label_authors(segments[0]);
      s = 1;
    }
    while (s < segments.size() && is_date_only(tokens_, segments[s])) ++s;
    if (s < segments.size() && !starts_venue(tokens_, segments[s])) {
      const Range candidate = trim_punct(tokens_, segments[s]);
      bool alpha = false;
      for (std::size_t i = candidate.begin; i < candidate.end; ++i) alpha = alpha || has_alpha(tokens_[i]);
      if (alpha && !(s == 0 && is_date_only(tokens_, segments[s]))) {
        tag_range(tags_, candidate, FieldTag::title);
        title_ = candidate;
        ++s;
      }
    }
    label_tail(std::vector<Range>(segments.begin() + static_cast<std::ptrdiff_t>(s), segments.end()),
               true);
    mark_dates(all);
    return tags_;
  }

 private:
  // Longest span enclosed in matching double quotes holding at least two words.
  std::optional<Range> find_quoted_title() const {
    std::optional<Range> best;
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
      if (!is_open_quote(tokens_[i])) continue;
      for (std::size_t j = i + 1; j < tokens_.size(); ++j) {
        if (!is_close_quote(tokens_[j])) continue;
        int words = 0;
        for (std::size_t k = i + 1; k < j; ++k) words += tokens_[k].shape.punctuation ? 0 : 1;
        if (words >= 2 && (!best || j - i > best->end - best->begin)) best = Range{i, j + 1};
        break;
      }
    }
    return best;
  }

  void label_authors(Range segment) {
    // Authors stop at the first date or parenthesis (author-year styles).
    Range r = segment;
    for (std::size_t i = r.begin; i < r.end; ++i) {
      if (is_year(tokens_[i]) || tokens_[i].text == "(") {
        r.end = i;
        break;
      }
    }
    r = trim_punct(tokens_, r);
    if (r.empty()) return;
    for (const Range& chunk : split_commas(tokens_, r)) {
      if (contains_word(tokens_, chunk, {"collaboration", "consortium"})) {
        tag_range(tags_, trim_punct(tokens_, chunk), FieldTag::collaboration);
        return;
      }
    }
    tag_range(tags_, r, FieldTag::author);
  }

  void mark_dates(Range r) {
    for (std::size_t i = r.begin; i < r.end; ++i) {
      if (i >= title_.begin && i < title_.end) continue;
      if (tags_[i] != FieldTag::other && tags_[i] != FieldTag::author) continue;
      if (is_year(tokens_[i])) {
        tags_[i] = FieldTag::date;
        // Adjacent month name ("June 2020", "2020 June").
        if (i > 0 && tags_[i - 1] == FieldTag::other && is_month(lower(tokens_[i - 1].text))) {
          tags_[i - 1] = FieldTag::date;
        }
      }
    }
  }

  void label_tail(const std::vector<Range>& segments, bool first_is_venue) {
    bool venue_seen = !first_is_venue;
    for (const Range& seg : segments) {
      Range body = seg;
      // Leading "In" is a cue, not part of the venue name.
      const Range trimmed = trim_punct(tokens_, body);
      bool in_cue = false;
      if (!trimmed.empty() && lower(tokens_[trimmed.begin].text) == "in" && trimmed.begin + 1 < trimmed.end) {
        in_cue = true;
        body.begin = trimmed.begin + 1;
      }
      FieldTag last_text_tag = FieldTag::other;
      for (const Range& raw_chunk : split_commas(tokens_, body)) {
        const Range chunk = trim_punct(tokens_, raw_chunk);
        if (chunk.empty()) continue;
        const FieldTag tag = classify_chunk(chunk, !venue_seen, in_cue, last_text_tag);
        if (tag == FieldTag::booktitle || tag == FieldTag::journal) venue_seen = true;
        if (tag != FieldTag::other && tag != FieldTag::date) last_text_tag = tag;
      }
      if (!venue_seen && !trimmed.empty()) venue_seen = true;
    }
  }

  // Classifies one comma-delimited chunk and writes its tags. Numeric
  // volume/issue/pages chunks are tagged token by token.
  FieldTag classify_chunk(Range chunk, bool venue_slot, bool in_cue, FieldTag previous) {
    const Token& first = tokens_[chunk.begin];
    const std::string first_word = lower(first.text);

    if (is_date_only(tokens_, chunk)) return FieldTag::date;  // mark_dates tags the year itself
    bool content = false;
    for (std::size_t i = chunk.begin; i < chunk.end; ++i) {
      content = content || has_alpha(tokens_[i]) || tokens_[i].shape.has_digit;
    }
    if (!content) return FieldTag::other;

    for (std::size_t i = chunk.begin; i < chunk.end; ++i) {
      const std::string w = lower(tokens_[i].text);
      if (w.starts_with("http") || w.starts_with("www.") || w == "url") {
        tag_range(tags_, chunk, FieldTag::web);
        return FieldTag::web;
      }
    }
    if (first_word.starts_with("doi") || one_of(first_word, {"isbn", "issn"})) {
      tag_range(tags_, chunk, FieldTag::pubnum);
      return FieldTag::pubnum;
    }
    if (one_of(first_word, {"pp", "pages", "page", "p"})) {
      tag_range(tags_, chunk, FieldTag::pages);
      return FieldTag::pages;
    }
    if (one_of(first_word, {"vol", "volume"})) {
      tag_range(tags_, chunk, FieldTag::volume);
      return FieldTag::volume;
    }
    if (one_of(first_word, {"no", "number", "issue"}) && chunk.end - chunk.begin >= 2) {
      tag_range(tags_, chunk, FieldTag::issue);
      return FieldTag::issue;
    }
    if (tag_numeric(chunk, previous)) return FieldTag::volume;
    if (contains_word(tokens_, chunk, {"technical", "tech"}) &&
        contains_word(tokens_, chunk, {"report", "rep", "reports"})) {
      tag_range(tags_, chunk, FieldTag::tech);
      return FieldTag::tech;
    }
    if (contains_word(tokens_, chunk, {"thesis", "dissertation"})) {
      tag_range(tags_, chunk, FieldTag::note);
      return FieldTag::note;
    }
    if (contains_word(tokens_, chunk, {"eds", "ed", "editors", "editor"})) {
      tag_range(tags_, chunk, FieldTag::editor);
      return FieldTag::editor;
    }
    if (venue_slot) {
      const bool arxiv = contains_word(tokens_, chunk, {"arxiv", "corr"});
      if (arxiv) {
        tag_arxiv(chunk);
        return FieldTag::journal;
      }
      FieldTag tag = FieldTag::journal;
      if (in_cue || contains_word(tokens_, chunk, {"proceedings", "proc", "conference", "workshop",
                                                    "symposium", "meeting", "congress", "conf"})) {
        tag = FieldTag::booktitle;
      }
      tag_range(tags_, chunk, tag);
      return tag;
    }
    if (contains_word(tokens_, chunk, {"press", "publishers", "publishing", "springer", "elsevier",
                                       "wiley", "curran", "associates", "kaufmann", "association",
                                       "society"})) {
      tag_range(tags_, chunk, FieldTag::publisher);
      return FieldTag::publisher;
    }
    if (contains_word(tokens_, chunk, {"lecture", "lncs", "series"})) {
      tag_range(tags_, chunk, FieldTag::series);
      return FieldTag::series;
    }
    if (contains_word(tokens_, chunk, {"university", "institute", "laboratory", "labs"})) {
      tag_range(tags_, chunk, FieldTag::institution);
      return FieldTag::institution;
    }
    if (contains_word(tokens_, chunk, {"arxiv"})) {
      tag_arxiv(chunk);
      return FieldTag::pubnum;
    }
    return FieldTag::other;
  }

  void tag_arxiv(Range chunk) {
    for (std::size_t i = chunk.begin; i < chunk.end; ++i) {
      const bool id_part = i > chunk.begin && (tokens_[i].shape.has_digit || tokens_[i].text == ":" ||
                                                tokens_[i].text == ".") &&
                           (tokens_[i - 1].text == ":" || tags_[i - 1] == FieldTag::pubnum);
      tags_[i] = id_part ? FieldTag::pubnum : FieldTag::journal;
      if (i + 1 < chunk.end && tokens_[i + 1].text == ":" && lower(tokens_[i].text) == "arxiv" &&
          i > chunk.begin) {
        tags_[i] = FieldTag::pubnum;
      }
    }
    // The id separator itself belongs to the id.
    for (std::size_t i = chunk.begin; i + 1 < chunk.end; ++i) {
      if (tokens_[i].text == ":" && tags_[i + 1] == FieldTag::pubnum) tags_[i] = FieldTag::pubnum;
    }
  }

  // "12(3):45–67", "12:45-67", "45–67", "12". Returns true when the chunk
  // consisted only of such numerals.
  bool tag_numeric(Range chunk, FieldTag previous) {
    for (std::size_t i = chunk.begin; i < chunk.end; ++i) {
      const Token& t = tokens_[i];
      if (!(is_number_like(t) || t.text == "(" || t.text == ")" || t.text == ":")) return false;
    }
    bool seen_volume = false;
    bool in_paren = false;
    for (std::size_t i = chunk.begin; i < chunk.end; ++i) {
      const Token& t = tokens_[i];
      if (t.text == "(") {
        in_paren = true;
        continue;
      }
      if (t.text == ")") {
        in_paren = false;
        continue;
      }
      if (t.text == ":") continue;
      if (in_paren) {
        tags_[i] = FieldTag::issue;
      } else if (is_range(t) || seen_volume ||
                 (previous != FieldTag::journal && previous != FieldTag::booktitle && !seen_volume &&
                  i + 1 == chunk.end && previous == FieldTag::volume)) {
        tags_[i] = FieldTag::pages;
      } else if (previous == FieldTag::journal || previous == FieldTag::booktitle ||
                 previous == FieldTag::other) {
        tags_[i] = FieldTag::volume;
        seen_volume = true;
      } else {
        tags_[i] = FieldTag::pages;
      }
    }
    return true;
  }

  std::span<const Token> tokens_;
  std::vector<FieldTag> tags_;
  Range title_{0, 0};
};

}  // namespace

std::vector<FieldTag> RuleLabeler::label(std::span<const Token> tokens) const {
  if (tokens.empty()) return {};
  return Tagger(tokens).run();
}

}  // namespace hallucite
