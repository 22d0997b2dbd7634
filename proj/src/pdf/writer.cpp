// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include "hallucite/pdf/writer.hpp"

#include <zlib.h>

#include <cmath>
#include <cstdio>

#include "hallucite/errors.hpp"

namespace hallucite::pdf {

namespace {

void write_number(std::string& out, double v) {
  if (std::isnan(v) || std::isinf(v)) v = 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  out += s;
}

void write_name(std::string& out, std::string_view name) {
  out += '/';
  for (unsigned char c : name) {
    if (c < 0x21 || c > 0x7E || c == '#' || c == '/' || c == '(' || c == ')' || c == '<' ||
        c == '>' || c == '[' || c == ']' || c == '{' || c == '}' || c == '%') {
      char buf[4];
      std::snprintf(buf, sizeof buf, "#%02X", c);
      out += buf;
    } else {
      out += static_cast<char>(c);
    }
  }
}

void write_string(std::string& out, const String& s) {
  if (s.hex) {
    static const char* kHex = "0123456789ABCDEF";
    out += '<';
    for (unsigned char c : s.bytes) {
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
    out += '>';
    return;
  }
  out += '(';
  for (unsigned char c : s.bytes) {
    switch (c) {
      case '(': out += "\\("; break;
      case ')': out += "\\)"; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default:
        if (c < 0x20 || c == 0x7F) {
          char buf[5];
          std::snprintf(buf, sizeof buf, "\\%03o", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  out += ')';
}

void write_object(std::string& out, const Object& obj);

void write_dict(std::string& out, const Dict& dict) {
  out += "<<";
  for (const auto& [key, value] : dict.entries) {
    write_name(out, key);
    out += ' ';
    write_object(out, value);
  }
  out += ">>";
}

void write_object(std::string& out, const Object& obj) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Null>) {
          out += "null";
        } else if constexpr (std::is_same_v<T, bool>) {
          out += v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          out += std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          write_number(out, v);
        } else if constexpr (std::is_same_v<T, String>) {
          write_string(out, v);
        } else if constexpr (std::is_same_v<T, Name>) {
          write_name(out, v.value);
        } else if constexpr (std::is_same_v<T, Array>) {
          out += '[';
          bool first = true;
          for (const auto& item : v.items) {
            if (!first) out += ' ';
            first = false;
            write_object(out, item);
          }
          out += ']';
        } else if constexpr (std::is_same_v<T, Dict>) {
          write_dict(out, v);
        } else if constexpr (std::is_same_v<T, Ref>) {
          out += std::to_string(v.num) + " " + std::to_string(v.gen) + " R";
        } else if constexpr (std::is_same_v<T, Stream>) {
          Dict dict = v.dict;
          dict.set("Length", Object(static_cast<std::int64_t>(v.data.size())));
          write_dict(out, dict);
          out += "\nstream\n";
          out += v.data;
          out += "\nendstream";
        }
      },
      obj.value);
}

}  // namespace

std::string serialize(const Object& obj) {
  std::string out;
  write_object(out, obj);
  return out;
}

void Writer::set(Ref ref, Object obj) {
  objects_[ref] = std::move(obj);
  if (ref.num >= next_) next_ = ref.num + 1;
}

std::string Writer::finish(Ref root, std::optional<Ref> info) const {
  std::string out = "%PDF-1.7\n%\xE2\xE3\xCF\xD3\n";
  std::map<int, std::pair<std::size_t, int>> offsets;
  int max_num = 0;
  for (const auto& [ref, obj] : objects_) {
    offsets[ref.num] = {out.size(), ref.gen};
    max_num = std::max(max_num, ref.num);
    out += std::to_string(ref.num) + " " + std::to_string(ref.gen) + " obj\n";
    write_object(out, obj);
    out += "\nendobj\n";
  }
  const std::size_t xref = out.size();
  out += "xref\n0 " + std::to_string(max_num + 1) + "\n";
  out += "0000000000 65535 f \n";
  for (int n = 1; n <= max_num; ++n) {
    char line[32];
    auto it = offsets.find(n);
    if (it != offsets.end()) {
      std::snprintf(line, sizeof line, "%010zu %05d n \n", it->second.first, it->second.second);
    } else {
      std::snprintf(line, sizeof line, "%010d 65535 f \n", 0);
    }
    out += line;
  }
  Dict trailer;
  trailer.set("Size", Object(max_num + 1));
  trailer.set("Root", Object(root));
  if (info) trailer.set("Info", Object(*info));
  out += "trailer\n";
  write_dict(out, trailer);
  out += "\nstartxref\n" + std::to_string(xref) + "\n%%EOF\n";
  return out;
}

std::string deflate(std::string_view data) {
  uLongf bound = compressBound(static_cast<uLong>(data.size()));
  std::string out(bound, '\0');
  if (compress2(reinterpret_cast<Bytef*>(out.data()), &bound,
                reinterpret_cast<const Bytef*>(data.data()), static_cast<uLong>(data.size()),
                Z_BEST_COMPRESSION) != Z_OK) {
    throw Error("zlib compression failed");
  }
  out.resize(bound);
  return out;
}

}  // namespace hallucite::pdf
