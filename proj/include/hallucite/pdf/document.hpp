// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "hallucite/pdf/object.hpp"

namespace hallucite::pdf {

struct Rect {
  double x0 = 0;
  double y0 = 0;
  double x1 = 612;
  double y1 = 792;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
};

struct Page {
  Ref ref;
  Dict dict;  // the page dictionary, with inheritable keys already resolved
  Rect media_box;
  Dict resources;
};

// Applies the stream's /Filter chain. Throws UnreadableDocument for filters
// that are not supported (image codecs never carry text).
std::string decode_filters(const Dict& stream_dict, std::string data);

// Read-only view of a PDF file. Objects are discovered by scanning the body
// rather than trusting the cross-reference table, so damaged xrefs and
// incremental updates both load; later definitions win.
class Document {
 public:
  // Throws UnreadableDocument when the bytes are not a usable PDF
  // (missing header, no catalog, encrypted).
  static Document open(const std::filesystem::path& path);
  static Document from_bytes(std::string bytes);

  // Follows indirect references; dangling references resolve to null.
  const Object& resolve(const Object& obj) const;
  const Object* find(Ref ref) const;
  const Dict* resolve_dict(const Object* obj) const;

  const Dict& trailer() const { return trailer_; }
  Ref root_ref() const { return root_; }
  const std::map<Ref, Object>& objects() const { return objects_; }

  std::size_t page_count() const { return pages_.size(); }
  const Page& page(std::size_t index) const { return pages_.at(index); }
  const std::vector<Page>& pages() const { return pages_; }

  std::string decode_stream(const Stream& stream) const;
  // Concatenated, decoded content streams of a page. Streams with
  // unsupported filters are skipped.
  std::string page_contents(const Page& page) const;

 private:
  Document() = default;
  void scan_objects();
  void expand_object_streams();
  void load_trailer();
  void load_pages();

  std::string bytes_;
  std::map<Ref, Object> objects_;
  std::map<Ref, std::size_t> offsets_;
  Dict trailer_;
  Ref root_;
  std::vector<Page> pages_;
};

}  // namespace hallucite::pdf
