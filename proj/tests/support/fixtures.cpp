// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include <algorithm>
#include <set>

#include "hallucite/similarity.hpp"

namespace hallucite::testing {

std::vector<oracle::Candidate> oracle_candidates(const TitleRows& rows) {
  std::vector<oracle::Candidate> out;
  out.reserve(rows.size());
  for (const auto& [id, title] : rows) out.push_back({id, oracle::decode(normalize_title(title))});
  return out;
}

std::string fabricated_title(Corpus& corpus, const std::vector<oracle::Candidate>& db, double bound) {
  while (true) {
    std::string title = corpus.title();
    if (oracle::all_below(oracle::decode(normalize_title(title)), db, bound)) return title;
  }
}

SeededPaper seeded_paper(std::uint64_t seed, const TitleRows& rows, const std::vector<oracle::Candidate>& db,
                         std::size_t clean, std::size_t fake, RefStyle style, int columns) {
  Corpus corpus(seed);
  SeededPaper paper;
  std::set<std::size_t> used;
  for (std::size_t i = 0; i < clean; ++i) {
    std::size_t pick = corpus.uniform(rows.size());
    while (!used.insert(pick).second) pick = corpus.uniform(rows.size());
    paper.titles.push_back(rows[pick].second);
    paper.fabricated.push_back(false);
  }
  for (std::size_t i = 0; i < fake; ++i) {
    const std::size_t at = corpus.uniform(paper.titles.size() + 1);
    paper.titles.insert(paper.titles.begin() + static_cast<std::ptrdiff_t>(at), fabricated_title(corpus, db));
    paper.fabricated.insert(paper.fabricated.begin() + static_cast<std::ptrdiff_t>(at), true);
  }
  paper.spec.seed = seed;
  paper.spec.columns = columns;
  paper.spec.style = style;
  paper.spec.body_pages = 1 + static_cast<int>(seed % 3);
  paper.spec.appendix = seed % 2 == 0;
  for (const auto& title : paper.titles) {
    paper.spec.references.push_back(format_reference(corpus.reference(title), style));
  }
  return paper;
}

}  // namespace hallucite::testing
