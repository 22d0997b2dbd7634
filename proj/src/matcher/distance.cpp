// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include "hallucite/similarity.hpp"
#include "hallucite/utf8.hpp"

namespace hallucite {

namespace {

constexpr std::size_t kWord = 64;

// One column step of one 64-row block (Hyyrö's formulation). `hin` is the
// horizontal delta entering the block's top row, the return value the delta
// leaving its bottom row (`out_bit` selects which row counts as the bottom).
inline int advance_block(std::uint64_t& pv, std::uint64_t& mv, std::uint64_t eq, int hin,
                         unsigned out_bit) {
  const std::uint64_t hin_neg = hin < 0 ? 1u : 0u;
  const std::uint64_t xv = eq | mv;
  eq |= hin_neg;
  const std::uint64_t xh = (((eq & pv) + pv) ^ pv) | eq;
  std::uint64_t ph = mv | ~(xh | pv);
  std::uint64_t mh = pv & xh;
  const int hout = static_cast<int>((ph >> out_bit) & 1u) - static_cast<int>((mh >> out_bit) & 1u);
  ph <<= 1;
  mh <<= 1;
  mh |= hin_neg;
  ph |= hin > 0 ? 1u : 0u;
  pv = mh | ~(xv | ph);
  mv = ph & xv;
  return hout;
}

}  // namespace

std::ptrdiff_t allowed_distance(std::size_t max_length, double min_score) {
  if (score_from_distance(0, max_length) < min_score) return -1;
  auto d = static_cast<std::ptrdiff_t>(std::floor((1.0 - min_score) * static_cast<double>(max_length)));
  d = std::clamp<std::ptrdiff_t>(d, 0, static_cast<std::ptrdiff_t>(max_length));
  while (d + 1 <= static_cast<std::ptrdiff_t>(max_length) &&
         score_from_distance(static_cast<std::size_t>(d + 1), max_length) >= min_score) {
    ++d;
  }
  while (d > 0 && score_from_distance(static_cast<std::size_t>(d), max_length) < min_score) --d;
  return d;
}

Pattern::Pattern(std::u32string text) : text_(std::move(text)) {
  blocks_ = (text_.size() + kWord - 1) / kWord;
  ascii_.assign(128 * blocks_, 0);
  zero_.assign(blocks_, 0);
  for (std::size_t i = 0; i < text_.size(); ++i) {
    const char32_t c = text_[i];
    const std::uint64_t bit = std::uint64_t{1} << (i % kWord);
    if (c < 128) {
      ascii_[c * blocks_ + i / kWord] |= bit;
    } else {
      auto& masks = other_[c];
      if (masks.empty()) masks.assign(blocks_, 0);
      masks[i / kWord] |= bit;
    }
  }
}

const std::uint64_t* Pattern::peq(char32_t c) const {
  if (c < 128) return ascii_.data() + c * blocks_;
  const auto it = other_.find(c);
  return it == other_.end() ? zero_.data() : it->second.data();
}

std::size_t Pattern::distance(std::string_view utf8_text, std::size_t text_length,
                              std::size_t bound) const {
  const std::size_t m = text_.size();
  if (m == 0) return text_length;
  if (text_length == 0) return m;
  const std::size_t min_possible = m > text_length ? m - text_length : text_length - m;
  if (min_possible > bound) return min_possible;

  // Small fixed buffers cover titles up to 256 code points without allocation.
  std::uint64_t pv_small[4], mv_small[4];
  std::vector<std::uint64_t> pv_big, mv_big;
  std::uint64_t* pv = pv_small;
  std::uint64_t* mv = mv_small;
  if (blocks_ > 4) {
    pv_big.assign(blocks_, ~std::uint64_t{0});
    mv_big.assign(blocks_, 0);
    pv = pv_big.data();
    mv = mv_big.data();
  } else {
    std::fill(pv, pv + blocks_, ~std::uint64_t{0});
    std::fill(mv, mv + blocks_, 0);
  }
  const unsigned last_bit = static_cast<unsigned>((m - 1) % kWord);

  std::size_t score = m;
  std::size_t pos = 0;
  std::size_t column = 0;
  while (pos < utf8_text.size()) {
    const char32_t c = utf8::next(utf8_text, pos);
    ++column;
    const std::uint64_t* eq = peq(c);
    int carry = 1;
    for (std::size_t b = 0; b + 1 < blocks_; ++b) carry = advance_block(pv[b], mv[b], eq[b], carry, 63);
    carry = advance_block(pv[blocks_ - 1], mv[blocks_ - 1], eq[blocks_ - 1], carry, last_bit);
    score = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(score) + carry);
    // The final distance is at least score - (columns left).
    const std::size_t left = text_length > column ? text_length - column : 0;
    if (score > left && score - left > bound) return score - left;
  }
  return score;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  const Pattern pattern(utf8::decode(a));
  return pattern.distance(b, utf8::length(b));
}

double similarity(std::string_view a, std::string_view b) {
  const std::size_t la = utf8::length(a);
  const std::size_t lb = utf8::length(b);
  const Pattern pattern(utf8::decode(a));
  return score_from_distance(pattern.distance(b, lb), std::max(la, lb));
}

namespace reference {

std::size_t levenshtein_dp(std::u32string_view a, std::u32string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace reference

}  // namespace hallucite
