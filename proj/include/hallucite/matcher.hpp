// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hallucite/bibdb.hpp"
#include "hallucite/citation.hpp"
#include "hallucite/similarity.hpp"

namespace hallucite {

struct MatcherConfig {
  double threshold = 0.9;
  // Past this many prefilter candidates the matcher switches to the
  // bound-ordered scan. Affects speed only, never results. 0 means no cap.
  std::size_t max_candidates = 0;
  std::string db_ref;

  // Throws InvalidConfig unless 0 < threshold <= 1.
  void validate() const;
};

/// Accepts both the 0-1 and the 0-100 scale; values above 1 are divided by 100.
double normalize_threshold(double value);

/// Best entry by similarity of normalized titles; ties go to the smallest id.
/// Identical to an exhaustive scan. The score is exact even when unmatched;
/// matched_id and matched_title are left empty in that case.
/// Throws EmptyDatabase.
MatchResult find_best_match(std::string_view title, const BibDatabase& db, const MatcherConfig& cfg);

/// Returns, in order, the citations without a match; each carries its
/// MatchResult. Matched citations are marked verified and dropped. Work fans
/// out per citation over OpenMP threads.
std::vector<Citation> verify(std::vector<Citation> citations, const BibDatabase& db, const MatcherConfig& cfg);

namespace reference {

/// Serial exhaustive scan with the plain DP; the ground truth for the
/// indexed matcher.
MatchResult find_best_match(std::string_view title, const BibDatabase& db, const MatcherConfig& cfg);

/// Serial verify built on the exhaustive scan.
std::vector<Citation> verify(std::vector<Citation> citations, const BibDatabase& db, const MatcherConfig& cfg);

}  // namespace reference

}  // namespace hallucite
