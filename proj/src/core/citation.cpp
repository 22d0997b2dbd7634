// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include "hallucite/citation.hpp"

#include <algorithm>
#include <cstdio>
#include <initializer_list>
#include <sstream>

#include "hallucite/errors.hpp"

namespace hallucite {

namespace {

using json = nlohmann::json;

constexpr std::array<std::string_view, kFieldTagCount> kTagNames = {
    "author",  "booktitle", "collaboration", "date",   "editor",
    "institution", "issue", "journal",       "location", "note",
    "pages",   "publisher", "pubnum",        "series", "tech",
    "title",   "volume",    "web",           "other",
};

void reject_unknown_keys(const json& object,
                         std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
  for (const auto& [key, _] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw UnknownField("unknown field '" + key + "' in " + std::string(where));
    }
  }
}

const json& require(const json& object, const char* key, std::string_view where) {
  auto it = object.find(key);
  if (it == object.end()) {
    throw MissingField(std::string(where) + " is missing '" + key + "'");
  }
  return *it;
}

template <typename T>
T get_as(const json& value, std::string_view what) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw InvalidRecord("field '" + std::string(what) + "' has the wrong type");
  }
}

BoundingBox bbox_from_record(const json& r) {
  if (!r.is_object()) throw InvalidRecord("bbox must be an object");
  reject_unknown_keys(r, {"page_index", "x0", "y0", "x1", "y1"}, "bbox");
  BoundingBox b;
  b.page_index = get_as<int>(require(r, "page_index", "bbox"), "page_index");
  b.x0 = get_as<double>(require(r, "x0", "bbox"), "x0");
  b.y0 = get_as<double>(require(r, "y0", "bbox"), "y0");
  b.x1 = get_as<double>(require(r, "x1", "bbox"), "x1");
  b.y1 = get_as<double>(require(r, "y1", "bbox"), "y1");
  if (!b.well_formed()) throw InvalidRecord("bbox violates x0<=x1, y0<=y1, page>=0");
  return b;
}

LabeledSpan span_from_record(const json& r, std::string_view raw_text) {
  if (!r.is_object()) throw InvalidRecord("span must be an object");
  reject_unknown_keys(r, {"tag", "start_char", "end_char", "text"}, "span");
  LabeledSpan s;
  s.tag = parse_field_tag(get_as<std::string>(require(r, "tag", "span"), "tag"));
  s.start_char = get_as<std::size_t>(require(r, "start_char", "span"), "start_char");
  s.end_char = get_as<std::size_t>(require(r, "end_char", "span"), "end_char");
  s.text = get_as<std::string>(require(r, "text", "span"), "text");
  if (s.start_char >= s.end_char || s.end_char > raw_text.size() ||
      raw_text.substr(s.start_char, s.end_char - s.start_char) != s.text) {
    throw InvalidRecord("span offsets do not re-slice raw_text");
  }
  return s;
}

MatchResult match_from_record(const json& r) {
  if (!r.is_object()) throw InvalidRecord("match must be an object");
  reject_unknown_keys(r, {"matched", "score", "db_name", "matched_id", "matched_title"},
                      "match");
  MatchResult m;
  m.matched = get_as<bool>(require(r, "matched", "match"), "matched");
  m.score = get_as<double>(require(r, "score", "match"), "score");
  if (auto it = r.find("db_name"); it != r.end()) m.db_name = get_as<std::string>(*it, "db_name");
  if (auto it = r.find("matched_id"); it != r.end()) {
    m.matched_id = get_as<std::string>(*it, "matched_id");
  }
  if (auto it = r.find("matched_title"); it != r.end()) {
    m.matched_title = get_as<std::string>(*it, "matched_title");
  }
  if (m.score < 0.0 || m.score > 1.0) throw InvalidRecord("match score outside [0,1]");
  if (m.matched && m.db_name.empty()) throw InvalidRecord("matched result without db_name");
  if (!m.matched && (!m.matched_id.empty() || !m.matched_title.empty())) {
    throw InvalidRecord("unmatched result carries an id or title");
  }
  return m;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string_view to_string(FieldTag tag) { return kTagNames[static_cast<std::size_t>(tag)]; }

FieldTag parse_field_tag(std::string_view name) {
  for (std::size_t i = 0; i < kTagNames.size(); ++i) {
    if (kTagNames[i] == name) return kAllFieldTags[i];
  }
  throw InvalidRecord("unknown field tag '" + std::string(name) + "'");
}

std::string_view to_string(CitationStatus status) {
  switch (status) {
    case CitationStatus::extracted: return "extracted";
    case CitationStatus::recognized: return "recognized";
    case CitationStatus::verified: return "verified";
    case CitationStatus::unverifiable: return "unverifiable";
  }
  return "extracted";
}

CitationStatus parse_status(std::string_view name) {
  for (auto s : {CitationStatus::extracted, CitationStatus::recognized,
                 CitationStatus::verified, CitationStatus::unverifiable}) {
    if (to_string(s) == name) return s;
  }
  throw InvalidRecord("unknown status '" + std::string(name) + "'");
}

bool is_forward_transition(CitationStatus from, CitationStatus to) {
  if (from == to) return true;
  switch (from) {
    case CitationStatus::extracted:
      return true;
    case CitationStatus::recognized:
      return to == CitationStatus::verified || to == CitationStatus::unverifiable;
    case CitationStatus::verified:
    case CitationStatus::unverifiable:
      return false;
  }
  return false;
}

void Citation::advance(CitationStatus next) {
  if (!is_forward_transition(status, next)) {
    throw StatusRegression("illegal status transition " + std::string(to_string(status)) +
                           " -> " + std::string(to_string(next)));
  }
  status = next;
}

Citation citation_from_record(const json& record) {
  if (!record.is_object()) throw InvalidRecord("citation record must be an object");
  reject_unknown_keys(record,
                      {"raw_text", "bboxes", "spans", "title", "fields", "match", "status"},
                      "citation record");
  auto raw = record.find("raw_text");
  if (raw == record.end() || !raw->is_string() || raw->get_ref<const std::string&>().empty()) {
    throw MissingField("citation record requires a non-empty 'raw_text'");
  }

  Citation c;
  c.raw_text = raw->get<std::string>();
  if (auto it = record.find("bboxes"); it != record.end()) {
    if (!it->is_array()) throw InvalidRecord("'bboxes' must be an array");
    for (const auto& b : *it) c.bboxes.push_back(bbox_from_record(b));
  }
  if (auto it = record.find("spans"); it != record.end()) {
    if (!it->is_array()) throw InvalidRecord("'spans' must be an array");
    for (const auto& s : *it) c.spans.push_back(span_from_record(s, c.raw_text));
  }
  if (auto it = record.find("title"); it != record.end()) c.title = get_as<std::string>(*it, "title");
  if (auto it = record.find("fields"); it != record.end()) {
    if (!it->is_object()) throw InvalidRecord("'fields' must be an object");
    for (const auto& [key, value] : it->items()) {
      c.fields[parse_field_tag(key)] = get_as<std::string>(value, key);
    }
  }
  if (auto it = record.find("match"); it != record.end() && !it->is_null()) {
    c.match = match_from_record(*it);
  }
  if (auto it = record.find("status"); it != record.end()) {
    c.status = parse_status(get_as<std::string>(*it, "status"));
  }
  return c;
}

json citation_to_record(const Citation& c) {
  json r = json::object();
  r["raw_text"] = c.raw_text;
  json boxes = json::array();
  for (const auto& b : c.bboxes) {
    boxes.push_back({{"page_index", b.page_index}, {"x0", b.x0}, {"y0", b.y0},
                     {"x1", b.x1}, {"y1", b.y1}});
  }
  r["bboxes"] = std::move(boxes);
  json spans = json::array();
  for (const auto& s : c.spans) {
    spans.push_back({{"tag", to_string(s.tag)}, {"start_char", s.start_char},
                     {"end_char", s.end_char}, {"text", s.text}});
  }
  r["spans"] = std::move(spans);
  r["title"] = c.title;
  json fields = json::object();
  for (const auto& [tag, text] : c.fields) fields[std::string(to_string(tag))] = text;
  r["fields"] = std::move(fields);
  if (c.match) {
    r["match"] = {{"matched", c.match->matched},       {"score", c.match->score},
                  {"db_name", c.match->db_name},       {"matched_id", c.match->matched_id},
                  {"matched_title", c.match->matched_title}};
  } else {
    r["match"] = nullptr;
  }
  r["status"] = to_string(c.status);
  return r;
}

nlohmann::ordered_json field_record(const Citation& c) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  auto author = c.fields.find(FieldTag::author);
  out["author"] = author != c.fields.end() ? author->second : std::string();
  out["title"] = c.title;
  for (const auto& [tag, text] : c.fields) {
    if (tag == FieldTag::author || tag == FieldTag::title || tag == FieldTag::other) continue;
    out[std::string(to_string(tag))] = text;
  }
  return out;
}

std::string render_citation(const Citation& c, Verbosity verbosity) {
  if (verbosity == Verbosity::minimal) return c.raw_text;

  std::ostringstream out;
  out << c.raw_text;
  if (verbosity == Verbosity::normal) {
    if (!c.title.empty()) out << "\n  title: " << c.title;
    if (c.match) {
      out << "\n  score: " << format_number(c.match->score);
      if (c.match->matched) out << " (" << c.match->db_name << ":" << c.match->matched_id << ")";
    }
    return out.str();
  }

  out << "\n" << field_record(c).dump(2);
  if (c.match) {
    out << "\n  status: " << to_string(c.status) << ", best score " << format_number(c.match->score);
    if (c.match->matched) {
      out << " in " << c.match->db_name << " [" << c.match->matched_id << "] "
          << c.match->matched_title;
    }
  } else {
    out << "\n  status: " << to_string(c.status);
  }
  for (const auto& b : c.bboxes) {
    out << "\n  page " << b.page_index + 1 << ": [" << format_number(b.x0) << ", "
        << format_number(b.y0) << ", " << format_number(b.x1) << ", " << format_number(b.y1)
        << "]";
  }
  return out.str();
}

}  // namespace hallucite
