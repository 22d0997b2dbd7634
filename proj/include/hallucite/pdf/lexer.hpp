// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "hallucite/pdf/object.hpp"

namespace hallucite::pdf {

bool is_whitespace(char c);
bool is_delimiter(char c);

// Tokenizer and recursive object parser over an in-memory byte range. Used
// for both the file body and content streams.
class Parser {
 public:
  explicit Parser(std::string_view data, std::size_t pos = 0) : data_(data), pos_(pos) {}

  std::size_t position() const { return pos_; }
  void seek(std::size_t pos) { pos_ = pos; }
  bool at_end();

  void skip_whitespace();

  // Parses the next object. Bare keywords (content-stream operators, `obj`,
  // `stream`, ...) are not objects: the parser stops in front of them and
  // returns nullopt. `allow_refs` enables `N G R` recognition.
  std::optional<Object> parse_object(bool allow_refs = true);

  // Reads a bare keyword token (letters and `'`/`"`/`*`), or nullopt.
  std::optional<std::string> read_keyword();

  // True when the upcoming token is exactly `keyword`; consumes it if so.
  bool accept_keyword(std::string_view keyword);

 private:
  std::optional<Object> parse_number_or_ref(bool allow_refs);
  std::string read_literal_string();
  std::string read_hex_string();
  std::string read_name();
  Array parse_array(bool allow_refs);
  Dict parse_dict(bool allow_refs);

  std::string_view data_;
  std::size_t pos_;
  int depth_ = 0;
};

}  // namespace hallucite::pdf
