// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hallucite {

// Bumped whenever normalize_title changes output for any input. Persisted
// databases stamped with another value refuse to load.
inline constexpr std::string_view kNormalizationVersion = "1";

/// NFKC, case fold, strip diacritics, unify dashes and quotes, collapse every
/// non-alphanumeric run to one space, trim.
std::string normalize_title(std::string_view s);

/// Unit-cost edit distance over code points.
std::size_t levenshtein(std::string_view a, std::string_view b);

/// 1 - d / max(|a|, |b|) over code points; 1.0 for two empty strings.
double similarity(std::string_view a, std::string_view b);

/// The single scoring expression shared by every code path, so equal
/// distance/length ratios compare equal bit for bit.
inline double score_from_distance(std::size_t distance, std::size_t max_length) {
  if (max_length == 0) return 1.0;
  return 1.0 - static_cast<double>(distance) / static_cast<double>(max_length);
}

/// Largest d in [0, max_length] with score_from_distance(d, max_length) >= min_score,
/// or -1 when none qualifies.
std::ptrdiff_t allowed_distance(std::size_t max_length, double min_score);

/// Bit-parallel edit distance against a fixed pattern (block-based
/// Myers/Hyyrö). One instance per query; `distance` is const and thread-safe.
class Pattern {
 public:
  explicit Pattern(std::u32string text);

  std::size_t length() const { return text_.size(); }
  const std::u32string& text() const { return text_; }

  // Exact distance to the UTF-8 text. When the distance exceeds `bound`,
  // may stop early and return any value greater than `bound`.
  std::size_t distance(std::string_view utf8_text, std::size_t text_length,
                       std::size_t bound = SIZE_MAX) const;

 private:
  const std::uint64_t* peq(char32_t c) const;

  std::u32string text_;
  std::size_t blocks_ = 0;
  std::vector<std::uint64_t> ascii_;  // 128 * blocks_
  std::unordered_map<char32_t, std::vector<std::uint64_t>> other_;
  std::vector<std::uint64_t> zero_;
};

namespace reference {

/// Two-row dynamic programme; the straightforward reference for levenshtein.
std::size_t levenshtein_dp(std::u32string_view a, std::u32string_view b);

}  // namespace reference

}  // namespace hallucite
