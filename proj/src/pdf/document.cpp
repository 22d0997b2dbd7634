// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include "hallucite/pdf/document.hpp"

#include <cctype>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "hallucite/errors.hpp"
#include "hallucite/pdf/lexer.hpp"

namespace hallucite::pdf {

namespace {

const Object kNullObject{Null{}};

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Given the offset of an `obj` keyword, recovers "num gen" in front of it.
bool object_header_before(std::string_view bytes, std::size_t obj_pos, Ref& ref,
                          std::size_t& header_start) {
  std::size_t i = obj_pos;
  auto skip_ws_back = [&] {
    std::size_t n = 0;
    while (i > 0 && is_whitespace(bytes[i - 1])) {
      --i;
      ++n;
    }
    return n;
  };
  auto digits_back = [&](int& value) {
    const std::size_t end = i;
    while (i > 0 && is_digit(bytes[i - 1]) && end - i < 10) --i;
    if (i == end) return false;
    value = std::stoi(std::string(bytes.substr(i, end - i)));
    return true;
  };
  if (skip_ws_back() == 0) return false;
  int gen = 0;
  if (!digits_back(gen)) return false;
  if (skip_ws_back() == 0) return false;
  int num = 0;
  if (!digits_back(num)) return false;
  if (i > 0 && !is_whitespace(bytes[i - 1]) && !is_delimiter(bytes[i - 1])) return false;
  ref = Ref{num, gen};
  header_start = i;
  return true;
}

Rect rect_from(const Object* obj, const Document& doc, Rect fallback) {
  if (!obj) return fallback;
  const auto* arr = doc.resolve(*obj).as<Array>();
  if (!arr || arr->items.size() != 4) return fallback;
  double v[4];
  for (int i = 0; i < 4; ++i) {
    auto n = doc.resolve(arr->items[static_cast<std::size_t>(i)]).number();
    if (!n) return fallback;
    v[i] = *n;
  }
  return Rect{std::min(v[0], v[2]), std::min(v[1], v[3]), std::max(v[0], v[2]),
              std::max(v[1], v[3])};
}

}  // namespace

Document Document::open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UnreadableDocument("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return from_bytes(std::move(bytes));
  } catch (const UnreadableDocument& e) {
    throw UnreadableDocument(path.string() + ": " + e.what());
  }
}

Document Document::from_bytes(std::string bytes) {
  Document doc;
  doc.bytes_ = std::move(bytes);
  if (doc.bytes_.substr(0, 1024).find("%PDF-") == std::string::npos) {
    throw UnreadableDocument("missing %PDF header");
  }
  try {
    doc.scan_objects();
    if (doc.objects_.empty()) throw UnreadableDocument("no objects found");
    doc.expand_object_streams();
    doc.load_trailer();
    doc.load_pages();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw UnreadableDocument(std::string("malformed document: ") + e.what());
  }
  return doc;
}

void Document::scan_objects() {
  std::string_view bytes = bytes_;
  std::size_t pos = 0;
  while (true) {
    const std::size_t found = bytes.find("obj", pos);
    if (found == std::string_view::npos) break;
    pos = found + 3;
    if (pos < bytes.size() && !is_whitespace(bytes[pos]) && !is_delimiter(bytes[pos])) continue;

    Ref ref;
    std::size_t header = 0;
    if (!object_header_before(bytes, found, ref, header)) continue;

    Parser parser(bytes, found + 3);
    std::optional<Object> obj;
    try {
      obj = parser.parse_object(true);
    } catch (const UnreadableDocument&) {
      continue;
    }
    if (!obj) obj = Object(Null{});

    const std::size_t after_obj = parser.position();
    if (obj->is<Dict>() && parser.accept_keyword("stream")) {
      std::size_t start = parser.position();
      if (start < bytes.size() && bytes[start] == '\r') ++start;
      if (start < bytes.size() && bytes[start] == '\n') ++start;

      std::size_t end = std::string_view::npos;
      if (const Object* len = obj->as<Dict>()->get("Length")) {
        if (auto n = len->integer(); n && *n >= 0 && start + static_cast<std::size_t>(*n) <= bytes.size()) {
          Parser check(bytes, start + static_cast<std::size_t>(*n));
          if (check.accept_keyword("endstream")) end = start + static_cast<std::size_t>(*n);
        }
      }
      std::size_t resume = 0;
      if (end == std::string_view::npos) {
        const std::size_t marker = bytes.find("endstream", start);
        if (marker == std::string_view::npos) break;
        end = marker;
        if (end > start && bytes[end - 1] == '\n') --end;
        if (end > start && bytes[end - 1] == '\r') --end;
        resume = marker + 9;
      } else {
        Parser skip(bytes, end);
        skip.accept_keyword("endstream");
        resume = skip.position();
      }
      Stream stream{std::move(*obj->as<Dict>()), std::string(bytes.substr(start, end - start))};
      objects_[ref] = Object(std::move(stream));
      offsets_[ref] = header;
      pos = resume;
    } else {
      parser.seek(after_obj);
      objects_[ref] = std::move(*obj);
      offsets_[ref] = header;
      pos = std::max(pos, after_obj);
    }
  }
}

void Document::expand_object_streams() {
  std::vector<std::pair<Ref, std::size_t>> containers;
  for (const auto& [ref, obj] : objects_) {
    if (const auto* s = obj.as<Stream>()) {
      if (const Object* type = s->dict.get("Type"); type && type->name() == "ObjStm") {
        containers.emplace_back(ref, offsets_[ref]);
      }
    }
  }
  for (const auto& [container_ref, container_offset] : containers) {
    const auto* stream = objects_[container_ref].as<Stream>();
    std::string data;
    try {
      data = decode_stream(*stream);
    } catch (const UnreadableDocument&) {
      continue;
    }
    const auto count = stream->dict.get("N") ? resolve(*stream->dict.get("N")).integer() : std::nullopt;
    const auto first = stream->dict.get("First") ? resolve(*stream->dict.get("First")).integer() : std::nullopt;
    if (!count || !first || *first < 0 || static_cast<std::size_t>(*first) > data.size()) continue;

    Parser header(data);
    std::vector<std::pair<int, std::size_t>> entries;
    const std::int64_t entry_count = count.value_or(0);
    for (std::int64_t i = 0; i < entry_count; ++i) {
      auto num = header.parse_object(false);
      auto off = header.parse_object(false);
      if (!num || !off || !num->integer() || !off->integer()) break;
      entries.emplace_back(static_cast<int>(*num->integer()),
                           static_cast<std::size_t>(*off->integer()));
    }
    for (const auto& [num, off] : entries) {
      const Ref ref{num, 0};
      auto existing = offsets_.find(ref);
      if (existing != offsets_.end() && existing->second > container_offset) continue;
      Parser body(data, static_cast<std::size_t>(*first) + off);
      auto obj = body.parse_object(true);
      if (!obj) continue;
      objects_[ref] = std::move(*obj);
      offsets_[ref] = container_offset;
    }
  }
}

void Document::load_trailer() {
  std::string_view bytes = bytes_;
  std::vector<std::pair<std::size_t, Dict>> candidates;
  for (std::size_t pos = bytes.find("trailer"); pos != std::string_view::npos;
       pos = bytes.find("trailer", pos + 7)) {
    Parser parser(bytes, pos + 7);
    if (auto obj = parser.parse_object(true); obj && obj->is<Dict>()) {
      candidates.emplace_back(pos, std::move(*obj->as<Dict>()));
    }
  }
  for (const auto& [ref, obj] : objects_) {
    if (const auto* s = obj.as<Stream>()) {
      if (const Object* type = s->dict.get("Type"); type && type->name() == "XRef") {
        candidates.emplace_back(offsets_[ref], s->dict);
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  for (const auto& [offset, dict] : candidates) {
    if (dict.get("Encrypt") && !dict.get("Encrypt")->is_null()) {
      throw UnreadableDocument("document is encrypted");
    }
  }
  for (auto& [offset, dict] : candidates) {
    if (const Object* root = dict.get("Root"); root && root->is<Ref>()) {
      trailer_ = dict;
      root_ = *root->as<Ref>();
      return;
    }
  }
  // No usable trailer: fall back to the newest catalog object.
  std::size_t best = 0;
  bool found = false;
  for (const auto& [ref, obj] : objects_) {
    if (const auto* d = obj.as<Dict>()) {
      if (const Object* type = d->get("Type"); type && type->name() == "Catalog") {
        if (!found || offsets_[ref] >= best) {
          best = offsets_[ref];
          root_ = ref;
          found = true;
        }
      }
    }
  }
  if (!found) throw UnreadableDocument("no document catalog");
  trailer_.set("Root", Object(root_));
}

void Document::load_pages() {
  const Dict* catalog = resolve_dict(find(root_));
  if (!catalog) throw UnreadableDocument("document catalog is not a dictionary");
  const Object* pages_obj = catalog->get("Pages");
  if (!pages_obj) throw UnreadableDocument("catalog has no page tree");

  std::set<Ref> visited;
  struct Inherited {
    const Object* resources = nullptr;
    const Object* media_box = nullptr;
  };

  auto walk = [&](auto&& self, const Object& node_obj, Inherited inherited, int depth) -> void {
    if (depth > 64) return;
    Ref ref{-1, 0};
    if (const auto* r = node_obj.as<Ref>()) {
      if (!visited.insert(*r).second) return;
      ref = *r;
    }
    const Dict* node = resolve_dict(&node_obj);
    if (!node) return;
    if (const Object* res = node->get("Resources")) inherited.resources = res;
    if (const Object* mb = node->get("MediaBox")) inherited.media_box = mb;

    const Object* kids = node->get("Kids");
    const std::string_view type = node->get("Type") ? node->get("Type")->name() : "";
    if (type == "Page" || (!kids && type != "Pages")) {
      Page page;
      page.ref = ref;
      page.dict = *node;
      page.media_box = rect_from(inherited.media_box, *this, Rect{});
      if (const Dict* res = resolve_dict(inherited.resources)) page.resources = *res;
      pages_.push_back(std::move(page));
      return;
    }
    if (const auto* arr = kids ? resolve(*kids).as<Array>() : nullptr) {
      for (const auto& kid : arr->items) self(self, kid, inherited, depth + 1);
    }
  };
  walk(walk, *pages_obj, Inherited{}, 0);
}

const Object* Document::find(Ref ref) const {
  auto it = objects_.find(ref);
  if (it != objects_.end()) return &it->second;
  // Tolerate generation mismatches produced by sloppy writers.
  auto lower = objects_.lower_bound(Ref{ref.num, 0});
  if (lower != objects_.end() && lower->first.num == ref.num) return &lower->second;
  return nullptr;
}

const Object& Document::resolve(const Object& obj) const {
  const Object* current = &obj;
  for (int hops = 0; hops < 32; ++hops) {
    const auto* ref = current->as<Ref>();
    if (!ref) return *current;
    current = find(*ref);
    if (!current) return kNullObject;
  }
  return kNullObject;
}

const Dict* Document::resolve_dict(const Object* obj) const {
  if (!obj) return nullptr;
  const Object& resolved = resolve(*obj);
  if (const auto* d = resolved.as<Dict>()) return d;
  if (const auto* s = resolved.as<Stream>()) return &s->dict;
  return nullptr;
}

std::string Document::decode_stream(const Stream& stream) const {
  // Filter arrays and parameters may be indirect; flatten before decoding.
  Dict dict = stream.dict;
  for (const char* key : {"Filter", "DecodeParms"}) {
    if (Object* v = dict.get(key)) {
      Object resolved = resolve(*v);
      if (auto* arr = resolved.as<Array>()) {
        for (auto& item : arr->items) item = resolve(item);
      }
      *v = std::move(resolved);
    }
  }
  return decode_filters(dict, stream.data);
}

std::string Document::page_contents(const Page& page) const {
  const Object* contents = page.dict.get("Contents");
  if (!contents) return {};
  std::vector<const Object*> parts;
  const Object& resolved = resolve(*contents);
  if (const auto* arr = resolved.as<Array>()) {
    for (const auto& item : arr->items) parts.push_back(&resolve(item));
  } else {
    parts.push_back(&resolved);
  }
  std::string out;
  for (const Object* part : parts) {
    const auto* stream = part->as<Stream>();
    if (!stream) continue;
    try {
      out += decode_stream(*stream);
      out += '\n';
    } catch (const UnreadableDocument&) {
    }
  }
  return out;
}

}  // namespace hallucite::pdf
