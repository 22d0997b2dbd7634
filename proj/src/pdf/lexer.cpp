// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include "hallucite/pdf/lexer.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "hallucite/errors.hpp"

namespace hallucite::pdf {

namespace {

constexpr int kMaxNesting = 256;

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

bool is_regular(char c) { return !is_whitespace(c) && !is_delimiter(c); }

}  // namespace

bool Array::operator==(const Array& o) const { return items == o.items; }
bool Dict::operator==(const Dict& o) const { return entries == o.entries; }
bool Stream::operator==(const Stream& o) const { return dict == o.dict && data == o.data; }

const Object* Dict::get(std::string_view key) const {
  for (const auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

Object* Dict::get(std::string_view key) {
  for (auto& [k, v] : entries) {
    if (k == key) return &v;
  }
  return nullptr;
}

void Dict::set(std::string key, Object value) {
  if (auto* existing = get(key)) {
    *existing = std::move(value);
    return;
  }
  entries.emplace_back(std::move(key), std::move(value));
}

void Dict::erase(std::string_view key) {
  std::erase_if(entries, [&](const auto& e) { return e.first == key; });
}

std::optional<double> Object::number() const {
  if (auto* i = as<std::int64_t>()) return static_cast<double>(*i);
  if (auto* d = as<double>()) return *d;
  return std::nullopt;
}

std::optional<std::int64_t> Object::integer() const {
  if (auto* i = as<std::int64_t>()) return *i;
  if (auto* d = as<double>()) return static_cast<std::int64_t>(*d);
  return std::nullopt;
}

std::string_view Object::name() const {
  if (auto* n = as<Name>()) return n->value;
  return {};
}

bool is_whitespace(char c) {
  return c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\f' || c == '\0';
}

bool is_delimiter(char c) {
  switch (c) {
    case '(': case ')': case '<': case '>': case '[': case ']':
    case '{': case '}': case '/': case '%':
      return true;
    default:
      return false;
  }
}

void Parser::skip_whitespace() {
  while (pos_ < data_.size()) {
    const char c = data_[pos_];
    if (is_whitespace(c)) {
      ++pos_;
    } else if (c == '%') {
      while (pos_ < data_.size() && data_[pos_] != '\n' && data_[pos_] != '\r') ++pos_;
    } else {
      break;
    }
  }
}

bool Parser::at_end() {
  skip_whitespace();
  return pos_ >= data_.size();
}

std::optional<std::string> Parser::read_keyword() {
  skip_whitespace();
  const std::size_t start = pos_;
  while (pos_ < data_.size() && is_regular(data_[pos_])) ++pos_;
  if (pos_ == start) return std::nullopt;
  return std::string(data_.substr(start, pos_ - start));
}

bool Parser::accept_keyword(std::string_view keyword) {
  skip_whitespace();
  if (data_.substr(pos_, keyword.size()) != keyword) return false;
  const std::size_t end = pos_ + keyword.size();
  if (end < data_.size() && is_regular(data_[end])) return false;
  pos_ = end;
  return true;
}

std::string Parser::read_name() {
  ++pos_;  // '/'
  std::string out;
  while (pos_ < data_.size() && is_regular(data_[pos_])) {
    char c = data_[pos_++];
    if (c == '#' && pos_ + 1 < data_.size() && hex_value(data_[pos_]) >= 0 &&
        hex_value(data_[pos_ + 1]) >= 0) {
      c = static_cast<char>(hex_value(data_[pos_]) * 16 + hex_value(data_[pos_ + 1]));
      pos_ += 2;
    }
    out.push_back(c);
  }
  return out;
}

std::string Parser::read_literal_string() {
  ++pos_;  // '('
  std::string out;
  int depth = 1;
  while (pos_ < data_.size()) {
    char c = data_[pos_++];
    if (c == '\\') {
      if (pos_ >= data_.size()) break;
      char e = data_[pos_++];
      switch (e) {
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 't': out.push_back('\t'); break;
        case 'b': out.push_back('\b'); break;
        case 'f': out.push_back('\f'); break;
        case '\r':
          if (pos_ < data_.size() && data_[pos_] == '\n') ++pos_;
          break;
        case '\n':
          break;
        default:
          if (e >= '0' && e <= '7') {
            int value = e - '0';
            for (int i = 0; i < 2 && pos_ < data_.size() && data_[pos_] >= '0' &&
                            data_[pos_] <= '7';
                 ++i) {
              value = value * 8 + (data_[pos_++] - '0');
            }
            out.push_back(static_cast<char>(value & 0xFF));
          } else {
            out.push_back(e);
          }
      }
    } else if (c == '(') {
      ++depth;
      out.push_back(c);
    } else if (c == ')') {
      if (--depth == 0) break;
      out.push_back(c);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::string Parser::read_hex_string() {
  ++pos_;  // '<'
  std::string out;
  int pending = -1;
  while (pos_ < data_.size() && data_[pos_] != '>') {
    const int v = hex_value(data_[pos_++]);
    if (v < 0) continue;
    if (pending < 0) {
      pending = v;
    } else {
      out.push_back(static_cast<char>(pending * 16 + v));
      pending = -1;
    }
  }
  if (pending >= 0) out.push_back(static_cast<char>(pending * 16));
  if (pos_ < data_.size()) ++pos_;
  return out;
}

std::optional<Object> Parser::parse_number_or_ref(bool allow_refs) {
  const std::size_t start = pos_;
  if (data_[pos_] == '+' || data_[pos_] == '-') ++pos_;
  bool real = false;
  while (pos_ < data_.size() &&
         (std::isdigit(static_cast<unsigned char>(data_[pos_])) || data_[pos_] == '.')) {
    if (data_[pos_] == '.') real = true;
    ++pos_;
  }
  std::string text(data_.substr(start, pos_ - start));
  if (text.empty() || text == "+" || text == "-" || text == ".") {
    return Object(std::int64_t{0});
  }
  if (real) return Object(std::strtod(text.c_str(), nullptr));

  std::int64_t value = 0;
  std::from_chars(text.data() + (text[0] == '+' ? 1 : 0), text.data() + text.size(), value);

  if (allow_refs && value >= 0) {
    const std::size_t after_first = pos_;
    skip_whitespace();
    const std::size_t gen_start = pos_;
    while (pos_ < data_.size() && std::isdigit(static_cast<unsigned char>(data_[pos_]))) ++pos_;
    if (pos_ > gen_start && (pos_ >= data_.size() || !is_regular(data_[pos_]))) {
      const int gen = std::atoi(std::string(data_.substr(gen_start, pos_ - gen_start)).c_str());
      if (accept_keyword("R")) return Object(Ref{static_cast<int>(value), gen});
    }
    pos_ = after_first;
  }
  return Object(value);
}

Array Parser::parse_array(bool allow_refs) {
  ++pos_;  // '['
  Array out;
  while (true) {
    skip_whitespace();
    if (pos_ >= data_.size()) break;
    if (data_[pos_] == ']') {
      ++pos_;
      break;
    }
    auto item = parse_object(allow_refs);
    if (!item) {
      // Stray keyword inside an array; skip it to stay resilient.
      if (!read_keyword()) ++pos_;
      continue;
    }
    out.items.push_back(std::move(*item));
  }
  return out;
}

Dict Parser::parse_dict(bool allow_refs) {
  pos_ += 2;  // '<<'
  Dict out;
  while (true) {
    skip_whitespace();
    if (pos_ >= data_.size()) break;
    if (data_[pos_] == '>' && pos_ + 1 < data_.size() && data_[pos_ + 1] == '>') {
      pos_ += 2;
      break;
    }
    if (data_[pos_] != '/') {
      // Malformed key; skip a token.
      if (!parse_object(allow_refs) && !read_keyword()) ++pos_;
      continue;
    }
    std::string key = read_name();
    skip_whitespace();
    if (pos_ < data_.size() && data_[pos_] == '>' && pos_ + 1 < data_.size() &&
        data_[pos_ + 1] == '>') {
      out.set(std::move(key), Object(Null{}));
      continue;
    }
    auto value = parse_object(allow_refs);
    if (!value) {
      auto kw = read_keyword();
      if (!kw) ++pos_;
      value = Object(Null{});
    }
    out.set(std::move(key), std::move(*value));
  }
  return out;
}

std::optional<Object> Parser::parse_object(bool allow_refs) {
  skip_whitespace();
  if (pos_ >= data_.size()) return std::nullopt;
  if (depth_ > kMaxNesting) throw UnreadableDocument("object nesting too deep");

  const char c = data_[pos_];
  struct DepthGuard {
    int& d;
    explicit DepthGuard(int& depth) : d(depth) { ++d; }
    ~DepthGuard() { --d; }
  } guard(depth_);

  if (c == '/') return Object(Name{read_name()});
  if (c == '(') return Object(String{read_literal_string(), false});
  if (c == '<') {
    if (pos_ + 1 < data_.size() && data_[pos_ + 1] == '<') return Object(parse_dict(allow_refs));
    return Object(String{read_hex_string(), true});
  }
  if (c == '[') return Object(parse_array(allow_refs));
  if (c == '+' || c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
    return parse_number_or_ref(allow_refs);
  }
  if (accept_keyword("true")) return Object(true);
  if (accept_keyword("false")) return Object(false);
  if (accept_keyword("null")) return Object(Null{});
  return std::nullopt;
}

}  // namespace hallucite::pdf
