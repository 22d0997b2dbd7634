// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace hallucite::pdf {

struct Object;

struct Null {
  bool operator==(const Null&) const = default;
};

struct Name {
  std::string value;
  bool operator==(const Name&) const = default;
};

// Raw string bytes. `hex` only records how the string was spelled.
struct String {
  std::string bytes;
  bool hex = false;
  bool operator==(const String& o) const { return bytes == o.bytes; }
};

struct Ref {
  int num = 0;
  int gen = 0;
  auto operator<=>(const Ref&) const = default;
};

struct Array {
  std::vector<Object> items;
  bool operator==(const Array&) const;
};

// Insertion-ordered dictionary; serialization keeps key order stable.
struct Dict {
  std::vector<std::pair<std::string, Object>> entries;

  const Object* get(std::string_view key) const;
  Object* get(std::string_view key);
  void set(std::string key, Object value);
  void erase(std::string_view key);
  bool operator==(const Dict&) const;
};

// `data` holds the stream bytes exactly as stored in the file (still encoded).
struct Stream {
  Dict dict;
  std::string data;
  bool operator==(const Stream&) const;
};

struct Object {
  using Value =
      std::variant<Null, bool, std::int64_t, double, String, Name, Array, Dict, Ref, Stream>;
  Value value;

  Object() = default;
  Object(Null v) : value(v) {}
  Object(bool v) : value(v) {}
  Object(int v) : value(static_cast<std::int64_t>(v)) {}
  Object(std::int64_t v) : value(v) {}
  Object(double v) : value(v) {}
  Object(String v) : value(std::move(v)) {}
  Object(Name v) : value(std::move(v)) {}
  Object(Array v) : value(std::move(v)) {}
  Object(Dict v) : value(std::move(v)) {}
  Object(Ref v) : value(v) {}
  Object(Stream v) : value(std::move(v)) {}

  template <typename T>
  bool is() const {
    return std::holds_alternative<T>(value);
  }
  template <typename T>
  const T* as() const {
    return std::get_if<T>(&value);
  }
  template <typename T>
  T* as() {
    return std::get_if<T>(&value);
  }

  bool is_null() const { return is<Null>(); }
  // Integer or real as double.
  std::optional<double> number() const;
  std::optional<std::int64_t> integer() const;
  // Name value, or empty view.
  std::string_view name() const;

  bool operator==(const Object&) const = default;
};

inline Object make_name(std::string value) { return Object(Name{std::move(value)}); }
inline Object make_string(std::string bytes) { return Object(String{std::move(bytes), false}); }

}  // namespace hallucite::pdf
