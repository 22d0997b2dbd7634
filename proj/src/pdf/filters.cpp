// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <zlib.h>

#include <cstdint>
#include <cstdlib>
#include <string>

#include "hallucite/errors.hpp"
#include "hallucite/pdf/document.hpp"

namespace hallucite::pdf {

namespace {

// Inflates as much as possible. Truncated or slightly corrupt streams still
// yield their decodable prefix, which is what viewers do too.
std::string inflate(const std::string& in) {
  z_stream zs{};
  if (inflateInit(&zs) != Z_OK) throw UnreadableDocument("zlib initialization failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());

  std::string out;
  char buffer[16384];
  int rc = Z_OK;
  do {
    zs.next_out = reinterpret_cast<Bytef*>(buffer);
    zs.avail_out = sizeof buffer;
    rc = inflate(&zs, Z_NO_FLUSH);
    out.append(buffer, sizeof buffer - zs.avail_out);
  } while (rc == Z_OK && (zs.avail_in > 0 || zs.avail_out == 0));
  inflateEnd(&zs);
  if (rc != Z_STREAM_END && rc != Z_OK && rc != Z_BUF_ERROR && out.empty()) {
    throw UnreadableDocument("corrupt Flate stream");
  }
  return out;
}

std::int64_t param_int(const Dict* params, std::string_view key, std::int64_t fallback) {
  if (!params) return fallback;
  if (const Object* v = params->get(key)) {
    if (auto i = v->integer()) return *i;
  }
  return fallback;
}

std::string undo_png_predictor(const std::string& data, const Dict* params) {
  const auto colors = param_int(params, "Colors", 1);
  const auto bits = param_int(params, "BitsPerComponent", 8);
  const auto columns = param_int(params, "Columns", 1);
  const std::size_t bpp = std::max<std::int64_t>(1, (colors * bits + 7) / 8);
  const std::size_t row_len = static_cast<std::size_t>((colors * bits * columns + 7) / 8);
  std::string out;
  std::string prev(row_len, '\0');
  std::size_t pos = 0;
  while (pos + 1 + row_len <= data.size()) {
    const auto type = static_cast<unsigned char>(data[pos]);
    std::string row = data.substr(pos + 1, row_len);
    for (std::size_t i = 0; i < row_len; ++i) {
      const int left = i >= bpp ? static_cast<unsigned char>(row[i - bpp]) : 0;
      const int up = static_cast<unsigned char>(prev[i]);
      const int up_left = i >= bpp ? static_cast<unsigned char>(prev[i - bpp]) : 0;
      int add = 0;
      switch (type) {
        case 1: add = left; break;
        case 2: add = up; break;
        case 3: add = (left + up) / 2; break;
        case 4: {
          const int p = left + up - up_left;
          const int pa = std::abs(p - left);
          const int pb = std::abs(p - up);
          const int pc = std::abs(p - up_left);
          add = (pa <= pb && pa <= pc) ? left : (pb <= pc ? up : up_left);
          break;
        }
        default: break;
      }
      row[i] = static_cast<char>((static_cast<unsigned char>(row[i]) + add) & 0xFF);
    }
    out += row;
    prev = std::move(row);
    pos += 1 + row_len;
  }
  return out;
}

std::string ascii_hex(const std::string& in) {
  std::string out;
  int pending = -1;
  for (char c : in) {
    if (c == '>') break;
    int v = -1;
    if (c >= '0' && c <= '9') v = c - '0';
    else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
    if (v < 0) continue;
    if (pending < 0) {
      pending = v;
    } else {
      out.push_back(static_cast<char>(pending * 16 + v));
      pending = -1;
    }
  }
  if (pending >= 0) out.push_back(static_cast<char>(pending * 16));
  return out;
}

std::string ascii85(const std::string& in) {
  std::string out;
  std::uint32_t tuple = 0;
  int count = 0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const char c = in[i];
    if (c == '~') break;
    if (c == 'z' && count == 0) {
      out.append(4, '\0');
      continue;
    }
    if (c < '!' || c > 'u') continue;
    tuple = tuple * 85 + static_cast<std::uint32_t>(c - '!');
    if (++count == 5) {
      for (int s = 3; s >= 0; --s) out.push_back(static_cast<char>((tuple >> (8 * s)) & 0xFF));
      tuple = 0;
      count = 0;
    }
  }
  if (count > 1) {
    for (int k = count; k < 5; ++k) tuple = tuple * 85 + 84;
    for (int s = 3; s >= 5 - count; --s) out.push_back(static_cast<char>((tuple >> (8 * s)) & 0xFF));
  }
  return out;
}

std::string run_length(const std::string& in) {
  std::string out;
  std::size_t i = 0;
  while (i < in.size()) {
    const int len = static_cast<unsigned char>(in[i++]);
    if (len == 128) break;
    if (len < 128) {
      out.append(in, i, static_cast<std::size_t>(len + 1));
      i += static_cast<std::size_t>(len + 1);
    } else if (i < in.size()) {
      out.append(static_cast<std::size_t>(257 - len), in[i++]);
    }
  }
  return out;
}

}  // namespace

std::string decode_filters(const Dict& stream_dict, std::string data) {
  const Object* filter = stream_dict.get("Filter");
  if (!filter || filter->is_null()) return data;

  std::vector<std::string> names;
  std::vector<const Dict*> params;
  const Object* parms = stream_dict.get("DecodeParms");
  if (auto* n = filter->as<Name>()) {
    names.push_back(n->value);
    params.push_back(parms ? parms->as<Dict>() : nullptr);
  } else if (auto* a = filter->as<Array>()) {
    const Array* parm_array = parms ? parms->as<Array>() : nullptr;
    for (std::size_t i = 0; i < a->items.size(); ++i) {
      names.emplace_back(a->items[i].name());
      const Dict* p = nullptr;
      if (parm_array && i < parm_array->items.size()) p = parm_array->items[i].as<Dict>();
      params.push_back(p);
    }
  }

  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& name = names[i];
    if (name == "FlateDecode" || name == "Fl") {
      data = inflate(data);
      if (param_int(params[i], "Predictor", 1) >= 10) data = undo_png_predictor(data, params[i]);
    } else if (name == "ASCIIHexDecode" || name == "AHx") {
      data = ascii_hex(data);
    } else if (name == "ASCII85Decode" || name == "A85") {
      data = ascii85(data);
    } else if (name == "RunLengthDecode" || name == "RL") {
      data = run_length(data);
    } else {
      throw UnreadableDocument("unsupported stream filter /" + name);
    }
  }
  return data;
}

}  // namespace hallucite::pdf
