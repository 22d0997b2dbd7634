// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include "hallucite/pdf/text.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string_view>
#include <unordered_map>

#include "hallucite/errors.hpp"
#include "hallucite/pdf/encoding.hpp"
#include "hallucite/pdf/lexer.hpp"
#include "hallucite/utf8.hpp"

namespace hallucite::pdf {

namespace {

struct Matrix {
  double a = 1, b = 0, c = 0, d = 1, e = 0, f = 0;

  // this * other (row-vector convention used by PDF).
  Matrix operator*(const Matrix& o) const {
    return Matrix{a * o.a + b * o.c,       a * o.b + b * o.d,       c * o.a + d * o.c,
                  c * o.b + d * o.d,       e * o.a + f * o.c + o.e, e * o.b + f * o.d + o.f};
  }
  void apply(double x, double y, double& ox, double& oy) const {
    ox = a * x + c * y + e;
    oy = b * x + d * y + f;
  }
};

Matrix translation(double tx, double ty) { return Matrix{1, 0, 0, 1, tx, ty}; }

std::string utf16be_to_utf8(std::string_view bytes) {
  std::string out;
  for (std::size_t i = 0; i + 1 < bytes.size(); i += 2) {
    char32_t unit = (static_cast<unsigned char>(bytes[i]) << 8) | static_cast<unsigned char>(bytes[i + 1]);
    if (unit >= 0xD800 && unit < 0xDC00 && i + 3 < bytes.size()) {
      const char32_t low = (static_cast<unsigned char>(bytes[i + 2]) << 8) |
                           static_cast<unsigned char>(bytes[i + 3]);
      if (low >= 0xDC00 && low < 0xE000) {
        unit = 0x10000 + ((unit - 0xD800) << 10) + (low - 0xDC00);
        i += 2;
      }
    }
    utf8::append(out, unit);
  }
  return out;
}

std::uint32_t bytes_to_code(std::string_view bytes) {
  std::uint32_t code = 0;
  for (char c : bytes) code = (code << 8) | static_cast<unsigned char>(c);
  return code;
}

struct Font {
  bool two_byte = false;
  std::array<char32_t, 256> encoding{};
  std::unordered_map<std::uint32_t, std::string> to_unicode;
  std::unordered_map<std::uint32_t, double> widths;  // glyph-space units
  double default_width = 0;
  double width_scale = 0.001;
  bool helvetica_metrics = false;
  bool bold = false;
  double ascent = 0.718;
  double descent = -0.207;

  std::string text_for(std::uint32_t code) const {
    if (auto it = to_unicode.find(code); it != to_unicode.end()) return it->second;
    std::string out;
    if (!two_byte && code < 256 && encoding[code] != 0) utf8::append(out, encoding[code]);
    return out;
  }

  double width_for(std::uint32_t code) const {
    if (auto it = widths.find(code); it != widths.end()) return it->second * width_scale;
    if (helvetica_metrics && code < 256) {
      return helvetica_width(static_cast<unsigned char>(code), bold) * 0.001;
    }
    return default_width * width_scale;
  }
};

void parse_to_unicode(const Document& doc, const Object& obj, Font& font) {
  const auto* stream = doc.resolve(obj).as<Stream>();
  if (!stream) return;
  std::string data;
  try {
    data = doc.decode_stream(*stream);
  } catch (const UnreadableDocument&) {
    return;
  }
  Parser parser(data);
  std::vector<Object> operands;
  while (!parser.at_end()) {
    if (auto o = parser.parse_object(false)) {
      operands.push_back(std::move(*o));
      continue;
    }
    auto kw = parser.read_keyword();
    if (!kw) {
      parser.seek(parser.position() + 1);
      continue;
    }
    if (*kw == "endbfchar") {
      for (std::size_t i = 0; i + 1 < operands.size(); i += 2) {
        const auto* src = operands[i].as<String>();
        const auto* dst = operands[i + 1].as<String>();
        if (src && dst) font.to_unicode[bytes_to_code(src->bytes)] = utf16be_to_utf8(dst->bytes);
      }
    } else if (*kw == "endbfrange") {
      for (std::size_t i = 0; i + 2 < operands.size(); i += 3) {
        const auto* lo = operands[i].as<String>();
        const auto* hi = operands[i + 1].as<String>();
        if (!lo || !hi) continue;
        const std::uint32_t first = bytes_to_code(lo->bytes);
        const std::uint32_t last = bytes_to_code(hi->bytes);
        if (last < first || last - first > 0xFFFF) continue;
        if (const auto* dst = operands[i + 2].as<String>()) {
          std::string base = dst->bytes;
          if (base.size() < 2) continue;
          for (std::uint32_t code = first; code <= last; ++code) {
            std::string unit = base;
            std::uint32_t tail = (static_cast<unsigned char>(unit[unit.size() - 2]) << 8) |
                                 static_cast<unsigned char>(unit.back());
            tail += code - first;
            unit[unit.size() - 2] = static_cast<char>((tail >> 8) & 0xFF);
            unit.back() = static_cast<char>(tail & 0xFF);
            font.to_unicode[code] = utf16be_to_utf8(unit);
          }
        } else if (const auto* arr = operands[i + 2].as<Array>()) {
          std::uint32_t code = first;
          for (const auto& item : arr->items) {
            if (code > last) break;
            if (const auto* s = item.as<String>()) font.to_unicode[code] = utf16be_to_utf8(s->bytes);
            ++code;
          }
        }
      }
    }
    operands.clear();
  }
}

void apply_encoding(const Document& doc, const Object* enc_obj, Font& font) {
  for (std::size_t code = 0; code < 256; ++code) {
    font.encoding[code] = winansi_to_unicode(static_cast<unsigned char>(code));
  }
  if (!enc_obj) return;
  const Object& enc = doc.resolve(*enc_obj);
  auto apply_base = [&](std::string_view name) {
    if (name == "StandardEncoding") {
      font.encoding['\''] = 0x2019;
      font.encoding['`'] = 0x2018;
    }
  };
  if (enc.is<Name>()) {
    apply_base(enc.name());
    return;
  }
  const auto* dict = enc.as<Dict>();
  if (!dict) return;
  if (const Object* base = dict->get("BaseEncoding")) apply_base(doc.resolve(*base).name());
  const Object* diffs = dict->get("Differences");
  const auto* arr = diffs ? doc.resolve(*diffs).as<Array>() : nullptr;
  if (!arr) return;
  std::int64_t code = 0;
  for (const auto& item : arr->items) {
    if (auto n = item.integer(); n && !item.is<Name>()) {
      code = *n;
    } else if (item.is<Name>()) {
      if (code >= 0 && code < 256) {
        font.encoding[static_cast<std::size_t>(code)] = glyph_name_to_unicode(item.name());
      }
      ++code;
    }
  }
}

void apply_descriptor(const Document& doc, const Dict* descriptor, Font& font) {
  if (!descriptor) return;
  auto number = [&](const char* key) -> std::optional<double> {
    const Object* v = descriptor->get(key);
    return v ? doc.resolve(*v).number() : std::nullopt;
  };
  const auto ascent = number("Ascent");
  const auto descent = number("Descent");
  if (ascent && descent && *ascent > 0 && *descent < 0 && *ascent - *descent < 3000) {
    font.ascent = *ascent / 1000.0;
    font.descent = *descent / 1000.0;
  }
  if (auto weight = number("FontWeight"); weight && *weight >= 600) font.bold = true;
  if (auto flags = number("Flags"); flags && (static_cast<std::int64_t>(*flags) & (1 << 18))) {
    font.bold = true;
  }
}

Font load_font(const Document& doc, const Dict& dict) {
  Font font;
  const std::string_view subtype = dict.get("Subtype") ? doc.resolve(*dict.get("Subtype")).name() : "";
  std::string base_font;
  if (const Object* bf = dict.get("BaseFont")) base_font = std::string(doc.resolve(*bf).name());
  for (const char* marker : {"Bold", "Black", "Heavy", "Semibold", "Demi"}) {
    if (base_font.find(marker) != std::string::npos) font.bold = true;
  }

  if (subtype == "Type0") {
    font.two_byte = true;
    font.default_width = 1000;
    const Object* descendants = dict.get("DescendantFonts");
    const auto* arr = descendants ? doc.resolve(*descendants).as<Array>() : nullptr;
    const Dict* cid = (arr && !arr->items.empty()) ? doc.resolve_dict(&arr->items[0]) : nullptr;
    if (cid) {
      if (const Object* dw = cid->get("DW")) font.default_width = doc.resolve(*dw).number().value_or(1000);
      if (const Object* w = cid->get("W")) {
        if (const auto* warr = doc.resolve(*w).as<Array>()) {
          const auto& items = warr->items;
          std::size_t i = 0;
          while (i < items.size()) {
            auto first = doc.resolve(items[i]).integer();
            if (!first || i + 1 >= items.size()) break;
            const Object& next = doc.resolve(items[i + 1]);
            if (const auto* list = next.as<Array>()) {
              std::uint32_t code = static_cast<std::uint32_t>(*first);
              for (const auto& wv : list->items) {
                font.widths[code++] = doc.resolve(wv).number().value_or(font.default_width);
              }
              i += 2;
            } else if (i + 2 < items.size()) {
              auto last = next.integer();
              auto width = doc.resolve(items[i + 2]).number();
              if (last && width && *last >= *first && *last - *first < 0x10000) {
                for (auto code = *first; code <= *last; ++code) {
                  font.widths[static_cast<std::uint32_t>(code)] = *width;
                }
              }
              i += 3;
            } else {
              break;
            }
          }
        }
      }
      apply_descriptor(doc, doc.resolve_dict(cid->get("FontDescriptor")), font);
    }
  } else {
    apply_encoding(doc, dict.get("Encoding"), font);
    if (subtype == "Type3") {
      if (const Object* fm = dict.get("FontMatrix")) {
        if (const auto* m = doc.resolve(*fm).as<Array>(); m && !m->items.empty()) {
          font.width_scale = doc.resolve(m->items[0]).number().value_or(0.001);
        }
      }
    }
    const Object* widths = dict.get("Widths");
    const auto* warr = widths ? doc.resolve(*widths).as<Array>() : nullptr;
    if (warr) {
      const std::int64_t first =
          dict.get("FirstChar") ? doc.resolve(*dict.get("FirstChar")).integer().value_or(0) : 0;
      for (std::size_t i = 0; i < warr->items.size(); ++i) {
        font.widths[static_cast<std::uint32_t>(first + static_cast<std::int64_t>(i))] =
            doc.resolve(warr->items[i]).number().value_or(0);
      }
      font.default_width = 500;
    } else if (base_font.find("Courier") != std::string::npos) {
      font.default_width = 600;
    } else {
      font.helvetica_metrics = true;
      font.default_width = 500;
    }
    apply_descriptor(doc, doc.resolve_dict(dict.get("FontDescriptor")), font);
  }
  if (const Object* tu = dict.get("ToUnicode")) parse_to_unicode(doc, *tu, font);
  return font;
}

struct GraphicsState {
  Matrix ctm;
  const Font* font = nullptr;
  double font_size = 0;
  double char_spacing = 0;
  double word_spacing = 0;
  double h_scale = 1;
  double leading = 0;
  double rise = 0;
};

class Interpreter {
 public:
  Interpreter(const Document& doc, std::vector<Glyph>& out) : doc_(doc), out_(out) {}

  void run(std::string_view content, const Dict& resources, const Matrix& base, int depth) {
    if (depth > 8) return;
    GraphicsState saved_gs = gs_;
    std::vector<GraphicsState> stack;
    gs_.ctm = base;
    Parser parser(content);
    std::vector<Object> operands;
    while (!parser.at_end()) {
      if (auto obj = parser.parse_object(false)) {
        operands.push_back(std::move(*obj));
        continue;
      }
      auto op = parser.read_keyword();
      if (!op) {
        parser.seek(parser.position() + 1);  // stray delimiter such as ')' or '}'
        operands.clear();
        continue;
      }
      if (*op == "BI") {
        skip_inline_image(parser, content);
      } else if (*op == "q") {
        stack.push_back(gs_);
      } else if (*op == "Q") {
        if (!stack.empty()) {
          gs_ = stack.back();
          stack.pop_back();
        }
      } else {
        execute(*op, operands, resources, depth);
      }
      operands.clear();
    }
    gs_ = saved_gs;
  }

 private:
  static void skip_inline_image(Parser& parser, std::string_view content) {
    std::size_t pos = content.find("ID", parser.position());
    if (pos == std::string_view::npos) {
      parser.seek(content.size());
      return;
    }
    pos += 3;
    while (pos + 2 <= content.size()) {
      pos = content.find("EI", pos);
      if (pos == std::string_view::npos) break;
      const bool before = pos > 0 && is_whitespace(content[pos - 1]);
      const bool after = pos + 2 >= content.size() || is_whitespace(content[pos + 2]);
      if (before && after) {
        parser.seek(pos + 2);
        return;
      }
      pos += 2;
    }
    parser.seek(content.size());
  }

  static double num(const std::vector<Object>& ops, std::size_t i) {
    return i < ops.size() ? ops[i].number().value_or(0.0) : 0.0;
  }

  const Font* font_for(const Dict& resources, std::string_view name) {
    const Dict* fonts = doc_.resolve_dict(resources.get("Font"));
    if (!fonts) return nullptr;
    const Object* entry = fonts->get(name);
    if (!entry) return nullptr;
    const Dict* dict = doc_.resolve_dict(entry);
    if (!dict) return nullptr;
    auto it = fonts_.find(dict);
    if (it == fonts_.end()) {
      it = fonts_.emplace(dict, std::make_unique<Font>(load_font(doc_, *dict))).first;
    }
    return it->second.get();
  }

  void execute(const std::string& op, const std::vector<Object>& ops, const Dict& resources,
               int depth) {
    if (op == "cm" && ops.size() >= 6) {
      gs_.ctm = Matrix{num(ops, 0), num(ops, 1), num(ops, 2), num(ops, 3), num(ops, 4), num(ops, 5)} *
                gs_.ctm;
    } else if (op == "BT") {
      tm_ = Matrix{};
      tlm_ = Matrix{};
    } else if (op == "Tf" && ops.size() >= 2) {
      gs_.font = font_for(resources, ops[0].name());
      gs_.font_size = num(ops, 1);
    } else if (op == "Tc") {
      gs_.char_spacing = num(ops, 0);
    } else if (op == "Tw") {
      gs_.word_spacing = num(ops, 0);
    } else if (op == "Tz") {
      gs_.h_scale = num(ops, 0) / 100.0;
    } else if (op == "TL") {
      gs_.leading = num(ops, 0);
    } else if (op == "Ts") {
      gs_.rise = num(ops, 0);
    } else if (op == "Td") {
      tlm_ = translation(num(ops, 0), num(ops, 1)) * tlm_;
      tm_ = tlm_;
    } else if (op == "TD") {
      gs_.leading = -num(ops, 1);
      tlm_ = translation(num(ops, 0), num(ops, 1)) * tlm_;
      tm_ = tlm_;
    } else if (op == "Tm" && ops.size() >= 6) {
      tlm_ = Matrix{num(ops, 0), num(ops, 1), num(ops, 2), num(ops, 3), num(ops, 4), num(ops, 5)};
      tm_ = tlm_;
    } else if (op == "T*") {
      next_line();
    } else if (op == "Tj" && !ops.empty()) {
      show(ops[0]);
    } else if (op == "'" && !ops.empty()) {
      next_line();
      show(ops[0]);
    } else if (op == "\"" && ops.size() >= 3) {
      gs_.word_spacing = num(ops, 0);
      gs_.char_spacing = num(ops, 1);
      next_line();
      show(ops[2]);
    } else if (op == "TJ" && !ops.empty()) {
      if (const auto* arr = ops[0].as<Array>()) {
        for (const auto& item : arr->items) {
          if (item.is<String>()) {
            show(item);
          } else if (auto n = item.number()) {
            const double tx = -*n / 1000.0 * gs_.font_size * gs_.h_scale;
            tm_ = translation(tx, 0) * tm_;
          }
        }
      }
    } else if (op == "Do" && !ops.empty()) {
      draw_xobject(ops[0].name(), resources, depth);
    }
  }

  void next_line() {
    tlm_ = translation(0, -gs_.leading) * tlm_;
    tm_ = tlm_;
  }

  void draw_xobject(std::string_view name, const Dict& resources, int depth) {
    const Dict* xobjects = doc_.resolve_dict(resources.get("XObject"));
    if (!xobjects || !xobjects->get(name)) return;
    const auto* stream = doc_.resolve(*xobjects->get(name)).as<Stream>();
    if (!stream) return;
    const Object* subtype = stream->dict.get("Subtype");
    if (!subtype || subtype->name() != "Form") return;
    Matrix form;
    if (const Object* m = stream->dict.get("Matrix")) {
      if (const auto* arr = doc_.resolve(*m).as<Array>(); arr && arr->items.size() == 6) {
        form = Matrix{num(arr->items, 0), num(arr->items, 1), num(arr->items, 2),
                      num(arr->items, 3), num(arr->items, 4), num(arr->items, 5)};
      }
    }
    const Dict* own = doc_.resolve_dict(stream->dict.get("Resources"));
    std::string content;
    try {
      content = doc_.decode_stream(*stream);
    } catch (const UnreadableDocument&) {
      return;
    }
    const Matrix saved_tm = tm_;
    const Matrix saved_tlm = tlm_;
    run(content, own ? *own : resources, form * gs_.ctm, depth + 1);
    tm_ = saved_tm;
    tlm_ = saved_tlm;
  }

  void show(const Object& operand) {
    const auto* str = operand.as<String>();
    if (!str || !gs_.font) return;
    const Font& font = *gs_.font;
    const std::string_view bytes = str->bytes;
    const std::size_t step = font.two_byte ? 2 : 1;
    for (std::size_t i = 0; i + step <= bytes.size(); i += step) {
      const std::uint32_t code = bytes_to_code(bytes.substr(i, step));
      const double w = font.width_for(code);
      const Matrix trm = Matrix{gs_.font_size * gs_.h_scale, 0, 0, gs_.font_size, 0, gs_.rise} * tm_ * gs_.ctm;

      std::string text = font.text_for(code);
      if (!text.empty()) {
        double xs[4];
        double ys[4];
        trm.apply(0, font.descent, xs[0], ys[0]);
        trm.apply(w, font.descent, xs[1], ys[1]);
        trm.apply(0, font.ascent, xs[2], ys[2]);
        trm.apply(w, font.ascent, xs[3], ys[3]);
        Glyph g;
        g.text = std::move(text);
        g.x0 = *std::min_element(xs, xs + 4);
        g.x1 = *std::max_element(xs, xs + 4);
        g.y0 = *std::min_element(ys, ys + 4);
        g.y1 = *std::max_element(ys, ys + 4);
        double bx = 0;
        trm.apply(0, 0, bx, g.baseline);
        g.size = std::hypot(trm.c, trm.d);
        g.bold = font.bold;
        out_.push_back(std::move(g));
      }

      double advance = w * gs_.font_size + gs_.char_spacing;
      if (!font.two_byte && code == 32) advance += gs_.word_spacing;
      tm_ = translation(advance * gs_.h_scale, 0) * tm_;
    }
  }

  const Document& doc_;
  std::vector<Glyph>& out_;
  GraphicsState gs_;
  Matrix tm_;
  Matrix tlm_;
  std::map<const Dict*, std::unique_ptr<Font>> fonts_;
};

}  // namespace

std::vector<Glyph> extract_glyphs(const Document& doc, std::size_t page_index) {
  const Page& page = doc.page(page_index);
  std::vector<Glyph> glyphs;
  Interpreter interpreter(doc, glyphs);
  interpreter.run(doc.page_contents(page), page.resources, Matrix{}, 0);
  return glyphs;
}

std::vector<Rect> highlight_rects(const Document& doc, std::size_t page_index) {
  std::vector<Rect> out;
  const Page& page = doc.page(page_index);
  const Object* annots = page.dict.get("Annots");
  const auto* arr = annots ? doc.resolve(*annots).as<Array>() : nullptr;
  if (!arr) return out;
  for (const auto& item : arr->items) {
    const Dict* annot = doc.resolve_dict(&item);
    if (!annot || !annot->get("Subtype") || annot->get("Subtype")->name() != "Highlight") continue;
    const auto* rect = annot->get("Rect") ? doc.resolve(*annot->get("Rect")).as<Array>() : nullptr;
    if (!rect || rect->items.size() != 4) continue;
    Rect r;
    r.x0 = doc.resolve(rect->items[0]).number().value_or(0);
    r.y0 = doc.resolve(rect->items[1]).number().value_or(0);
    r.x1 = doc.resolve(rect->items[2]).number().value_or(0);
    r.y1 = doc.resolve(rect->items[3]).number().value_or(0);
    out.push_back(r);
  }
  return out;
}

}  // namespace hallucite::pdf
