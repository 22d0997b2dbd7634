// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "oracle.hpp"
#include "pdf_builder.hpp"

namespace hallucite::testing {

using TitleRows = std::vector<std::pair<std::string, std::string>>;

std::vector<oracle::Candidate> oracle_candidates(const TitleRows& rows);

// A generated title whose best similarity to every candidate is below
// `bound`, checked by the exhaustive oracle.
std::string fabricated_title(Corpus& corpus, const std::vector<oracle::Candidate>& db, double bound = 0.9);

struct SeededPaper {
  PaperSpec spec;
  std::vector<std::string> titles;
  std::vector<bool> fabricated;
};

// A paper citing `clean` distinct database titles and `fake` fabricated ones
// at random positions.
SeededPaper seeded_paper(std::uint64_t seed, const TitleRows& rows, const std::vector<oracle::Candidate>& db,
                         std::size_t clean, std::size_t fake, RefStyle style, int columns);

}  // namespace hallucite::testing
