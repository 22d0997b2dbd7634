// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>

#include "hallucite/pdf/object.hpp"

namespace hallucite::pdf {

std::string serialize(const Object& obj);

// Assembles a complete PDF file (classic xref table) from numbered objects.
class Writer {
 public:
  Ref reserve() { return Ref{next_++, 0}; }
  Ref add(Object obj) {
    Ref ref = reserve();
    objects_[ref] = std::move(obj);
    return ref;
  }
  void set(Ref ref, Object obj);

  std::string finish(Ref root, std::optional<Ref> info = std::nullopt) const;

 private:
  int next_ = 1;
  std::map<Ref, Object> objects_;
};

// Deflates `data` (zlib format) for /FlateDecode streams.
std::string deflate(std::string_view data);

}  // namespace hallucite::pdf
