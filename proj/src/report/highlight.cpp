// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <fstream>
#include <map>

#include "hallucite/errors.hpp"
#include "hallucite/pdf/document.hpp"
#include "hallucite/pdf/writer.hpp"
#include "hallucite/report.hpp"
#include "hallucite/utf8.hpp"

namespace hallucite {

namespace {

using pdf::Array;
using pdf::Dict;
using pdf::Object;
using pdf::Ref;

constexpr double kOpacity = 0.4;

struct Color {
  double r, g, b;
};
constexpr Color kFlagged{1.0, 0.9, 0.0};
constexpr Color kUnverifiable{0.4, 0.7, 1.0};

struct Mark {
  BoundingBox box;
  Color color;
  std::string note;
};

Array numbers(std::initializer_list<double> values) {
  Array a;
  for (double v : values) a.items.emplace_back(v);
  return a;
}

// PDF text string: plain bytes for ASCII, UTF-16BE with a BOM otherwise.
Object text_string(std::string_view utf8_text) {
  bool ascii = true;
  for (unsigned char c : utf8_text) ascii = ascii && c < 0x80;
  if (ascii) return pdf::make_string(std::string(utf8_text));
  std::string bytes = "\xFE\xFF";
  for (char32_t cp : utf8::decode(utf8_text)) {
    auto unit = [&](unsigned v) {
      bytes.push_back(static_cast<char>(v >> 8));
      bytes.push_back(static_cast<char>(v & 0xFF));
    };
    if (cp >= 0x10000) {
      const unsigned v = static_cast<unsigned>(cp) - 0x10000;
      unit(0xD800 + (v >> 10));
      unit(0xDC00 + (v & 0x3FF));
    } else {
      unit(static_cast<unsigned>(cp));
    }
  }
  return pdf::make_string(std::move(bytes));
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

Object appearance(const Mark& m) {
  const BoundingBox& b = m.box;
  Dict gs;
  gs.set("Type", pdf::make_name("ExtGState"));
  gs.set("CA", kOpacity);
  gs.set("ca", kOpacity);
  gs.set("BM", pdf::make_name("Multiply"));
  Dict gs_map;
  gs_map.set("G0", gs);
  Dict resources;
  resources.set("ExtGState", gs_map);

  pdf::Stream s;
  s.dict.set("Type", pdf::make_name("XObject"));
  s.dict.set("Subtype", pdf::make_name("Form"));
  s.dict.set("BBox", numbers({b.x0, b.y0, b.x1, b.y1}));
  s.dict.set("Resources", resources);
  s.data = "/G0 gs " + fmt(m.color.r) + " " + fmt(m.color.g) + " " + fmt(m.color.b) + " rg " + fmt(b.x0) + " " +
           fmt(b.y0) + " " + fmt(b.width()) + " " + fmt(b.height()) + " re f\n";
  return Object(std::move(s));
}

Dict annotation(const Mark& m, Ref page, Ref ap) {
  const BoundingBox& b = m.box;
  Dict a;
  a.set("Type", pdf::make_name("Annot"));
  a.set("Subtype", pdf::make_name("Highlight"));
  a.set("Rect", numbers({b.x0, b.y0, b.x1, b.y1}));
  a.set("QuadPoints", numbers({b.x0, b.y1, b.x1, b.y1, b.x0, b.y0, b.x1, b.y0}));
  a.set("C", numbers({m.color.r, m.color.g, m.color.b}));
  a.set("CA", kOpacity);
  a.set("F", 4);
  a.set("P", page);
  a.set("T", pdf::make_string(std::string(kToolName)));
  a.set("Contents", text_string(m.note));
  Dict ap_dict;
  ap_dict.set("N", ap);
  a.set("AP", ap_dict);
  return a;
}

}  // namespace

bool highlight_pdf(const std::filesystem::path& source, std::span<const Citation> flagged,
                   std::span<const Citation> unverifiable, const std::filesystem::path& out) {
  if (flagged.empty() && unverifiable.empty()) return false;
  try {
    const pdf::Document doc = pdf::Document::open(source);

    std::map<int, std::vector<Mark>> by_page;
    auto collect = [&](std::span<const Citation> list, Color color, std::string_view label) {
      for (const auto& c : list) {
        const std::string note = std::string(label) + (c.title.empty() ? c.raw_text : c.title);
        for (const auto& box : c.bboxes) {
          if (box.page_index < 0 || static_cast<std::size_t>(box.page_index) >= doc.page_count() ||
              !box.well_formed()) {
            throw AnnotationFailure("bounding box on page " + std::to_string(box.page_index) +
                                    " is outside the document");
          }
          by_page[box.page_index].push_back(Mark{box, color, note});
        }
      }
    };
    collect(flagged, kFlagged, "Possibly hallucinated: ");
    collect(unverifiable, kUnverifiable, "Unverifiable: ");

    pdf::Writer writer;
    for (const auto& [ref, obj] : doc.objects()) {
      if (const auto* s = obj.as<pdf::Stream>()) {
        const auto type = s->dict.get("Type") ? s->dict.get("Type")->name() : std::string_view();
        if (type == "ObjStm" || type == "XRef") continue;
      }
      writer.set(ref, obj);
    }

    for (const auto& [page_index, marks] : by_page) {
      const pdf::Page& page = doc.page(static_cast<std::size_t>(page_index));
      const Object* original = doc.find(page.ref);
      const Dict* page_dict = original ? original->as<Dict>() : nullptr;
      if (!page_dict) throw AnnotationFailure("page " + std::to_string(page_index) + " is not a dictionary");
      Dict updated = *page_dict;
      Array annots;
      if (const Object* existing = updated.get("Annots")) {
        if (const auto* arr = doc.resolve(*existing).as<Array>()) annots = *arr;
      }
      for (const auto& m : marks) {
        const Ref ap = writer.add(appearance(m));
        annots.items.emplace_back(writer.add(Object(annotation(m, page.ref, ap))));
      }
      updated.set("Annots", annots);
      writer.set(page.ref, Object(std::move(updated)));
    }

    std::optional<Ref> info;
    if (const Object* i = doc.trailer().get("Info"); i && i->is<Ref>()) {
      if (doc.find(*i->as<Ref>())) info = *i->as<Ref>();
    }
    const std::string bytes = writer.finish(doc.root_ref(), info);
    std::ofstream file(out, std::ios::binary | std::ios::trunc);
    file.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!file) throw AnnotationFailure(out.string() + ": write failed");
    return true;
  } catch (const AnnotationFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw AnnotationFailure(source.string() + ": " + e.what());
  }
}

}  // namespace hallucite
