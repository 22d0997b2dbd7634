// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <exception>
#include <limits>

#include "hallucite/errors.hpp"
#include "hallucite/matcher.hpp"
#include "hallucite/utf8.hpp"

namespace hallucite {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kSeedCount = 64;
constexpr std::size_t kChunk = 1024;
constexpr std::size_t kParallelMin = 4096;

struct Best {
  double score = -1.0;
  std::size_t index = kNone;

  void offer(double s, std::size_t i) {
    if (s > score || (s == score && i < index)) {
      score = s;
      index = i;
    }
  }
  void merge(const Best& other) {
    if (other.index != kNone) offer(other.score, other.index);
  }
};

std::size_t abs_diff(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

MatchResult to_result(const BibDatabase& db, const Best& best, double threshold) {
  MatchResult r;
  r.db_name = db.name();
  r.score = best.index == kNone ? 0.0 : best.score;
  r.matched = best.index != kNone && best.score >= threshold;
  if (r.matched) {
    r.matched_id = db.entry(best.index).id;
    r.matched_title = db.entry(best.index).title;
  }
  return r;
}

void check_inputs(const BibDatabase& db, const MatcherConfig& cfg) {
  cfg.validate();
  if (db.empty()) throw EmptyDatabase("database '" + db.name() + "' has no entries");
}

// Scores `candidates` against the pattern, keeping only entries that reach
// `floor`. Runs in parallel when the list is long.
Best evaluate(const Pattern& pattern, const BibDatabase& db, std::span<const std::uint32_t> candidates,
              double floor) {
  const auto& index = db.index();
  const std::size_t m = pattern.length();
  Best best;
  const auto n = static_cast<std::ptrdiff_t>(candidates.size());
#pragma omp parallel if (candidates.size() >= kParallelMin)
  {
    Best local;
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const std::uint32_t e = candidates[static_cast<std::size_t>(i)];
      const std::size_t len = index.lengths[e];
      const std::size_t max_len = std::max(m, len);
      const std::ptrdiff_t k = allowed_distance(max_len, std::max(floor, local.score));
      if (k < 0) continue;
      const std::size_t d = pattern.distance(db.entry(e).normalized_title, len, static_cast<std::size_t>(k));
      if (d <= static_cast<std::size_t>(k)) local.offer(score_from_distance(d, max_len), e);
    }
#pragma omp critical(hallucite_matcher_merge)
    best.merge(local);
  }
  return best;
}

// Every entry whose score can reach `threshold`, plus some that cannot.
std::vector<std::uint32_t> prefilter(const BibDatabase& db, const std::u32string& query,
                                     const std::vector<std::pair<std::uint64_t, std::uint32_t>>& profile,
                                     double threshold) {
  const auto& index = db.index();
  const std::size_t m = query.size();
  const std::size_t max_len = index.max_length();

  // Lengths that can still reach the threshold form one contiguous window.
  std::size_t lo = m, hi = m;
  while (lo > 0 && score_from_distance(m - (lo - 1), m) >= threshold) --lo;
  while (score_from_distance(hi + 1 - m, hi + 1) >= threshold && hi + 1 <= max_len) ++hi;
  if (lo > max_len) return {};
  hi = std::min(hi, max_len);

  std::ptrdiff_t k_max = 0;
  for (std::size_t len = lo; len <= hi; ++len) k_max = std::max(k_max, allowed_distance(std::max(m, len), threshold));
  const std::size_t need = 3 * static_cast<std::size_t>(std::max<std::ptrdiff_t>(k_max, 0)) + 1;

  std::vector<std::uint32_t> out;
  if (m >= 3 && need <= profile.size()) {
    // A string within k edits keeps all but at most 3k of the query's
    // distinct trigrams, so it must contain one of any 3k+1 of them.
    std::vector<std::pair<std::size_t, std::uint64_t>> by_rarity;
    by_rarity.reserve(profile.size());
    for (const auto& [key, count] : profile) {
      const auto [a, b] = index.lookup(key);
      by_rarity.emplace_back(b - a, key);
    }
    std::partial_sort(by_rarity.begin(), by_rarity.begin() + static_cast<std::ptrdiff_t>(need), by_rarity.end());
    for (std::size_t r = 0; r < need; ++r) {
      const auto [a, b] = index.lookup(by_rarity[r].second);
      for (std::size_t p = a; p < b; ++p) {
        const std::uint32_t e = index.postings[p];
        if (index.lengths[e] >= lo && index.lengths[e] <= hi) out.push_back(e);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  } else {
    out.assign(index.by_length.begin() + index.length_offsets[lo],
               index.by_length.begin() + index.length_offsets[hi + 1]);
  }
  return out;
}

// Exact best over the whole database, visiting entries in decreasing order
// of an upper bound on their score and stopping once the bound drops below
// the best score found.
Best bounded_scan(const Pattern& pattern, const BibDatabase& db,
                  const std::vector<std::pair<std::uint64_t, std::uint32_t>>& profile, Best best) {
  const auto& index = db.index();
  const std::size_t n = db.size();
  const std::size_t m = pattern.length();

  std::vector<std::uint32_t> shared(n, 0);
  for (const auto& [key, cq] : profile) {
    const auto [a, b] = index.lookup(key);
    for (std::size_t p = a; p < b; ++p) {
      const std::uint32_t ce = index.counts[p];
      shared[index.postings[p]] += ce == 255 ? cq : std::min(cq, ce);
    }
  }

  // Each edit destroys at most three trigram occurrences, so
  // d >= (max_len - 2 - shared) / 3, and never below the length gap.
  std::vector<double> bound(n);
  for (std::size_t e = 0; e < n; ++e) {
    const std::size_t len = index.lengths[e];
    const std::size_t max_len = std::max(m, len);
    std::size_t lb = abs_diff(m, len);
    const std::size_t grams = max_len >= 2 ? max_len - 2 : 0;
    if (shared[e] < grams) lb = std::max<std::size_t>(lb, (grams - shared[e] + 2) / 3);
    bound[e] = score_from_distance(lb, max_len);
  }
  auto before = [&](std::uint32_t a, std::uint32_t b) {
    return bound[a] > bound[b] || (bound[a] == bound[b] && a < b);
  };

  std::vector<std::uint32_t> order;
  if (best.index == kNone) {
    std::vector<std::uint32_t> all(n);
    for (std::uint32_t e = 0; e < n; ++e) all[e] = e;
    const std::size_t seed = std::min(kSeedCount, n);
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(seed), all.end(), before);
    best.merge(evaluate(pattern, db, std::span(all).first(seed), 0.0));
  }
  for (std::uint32_t e = 0; e < n; ++e) {
    if (bound[e] >= best.score) order.push_back(e);
  }
  std::sort(order.begin(), order.end(), before);

  for (std::size_t start = 0; start < order.size(); start += kChunk) {
    if (bound[order[start]] < best.score) break;
    const std::size_t len = std::min(kChunk, order.size() - start);
    best.merge(evaluate(pattern, db, std::span(order).subspan(start, len), best.score));
  }
  return best;
}

}  // namespace

void MatcherConfig::validate() const {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw InvalidConfig("threshold must be in (0, 1], got " + std::to_string(threshold));
  }
}

double normalize_threshold(double value) { return value > 1.0 ? value / 100.0 : value; }

MatchResult find_best_match(std::string_view title, const BibDatabase& db, const MatcherConfig& cfg) {
  check_inputs(db, cfg);
  const std::string normalized = normalize_title(title);
  for (const auto& [hash, e] : db.index().exact_candidates(normalized)) {
    if (db.entry(e).normalized_title == normalized) return to_result(db, Best{1.0, e}, cfg.threshold);
  }
  const std::u32string query = utf8::decode(normalized);
  const auto profile = trigram_profile(query);
  const Pattern pattern(query);

  Best best;
  const std::vector<std::uint32_t> candidates = prefilter(db, query, profile, cfg.threshold);
  if (cfg.max_candidates == 0 || candidates.size() <= cfg.max_candidates) {
    best = evaluate(pattern, db, candidates, cfg.threshold);
    if (best.index != kNone && best.score >= cfg.threshold) return to_result(db, best, cfg.threshold);
  }
  best = bounded_scan(pattern, db, profile, best);
  return to_result(db, best, cfg.threshold);
}

namespace {

template <typename Matcher>
std::vector<Citation> verify_with(std::vector<Citation> citations, const BibDatabase& db,
                                  const MatcherConfig& cfg, bool parallel, Matcher&& match) {
  check_inputs(db, cfg);
  const auto n = static_cast<std::ptrdiff_t>(citations.size());
  std::vector<std::optional<MatchResult>> results(citations.size());
  std::vector<std::exception_ptr> errors(citations.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const Citation& c = citations[k];
    if (c.status != CitationStatus::recognized || c.title.empty()) continue;
    try {
      results[k] = match(c.title, db, cfg);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<Citation> out;
  for (std::size_t k = 0; k < citations.size(); ++k) {
    Citation& c = citations[k];
    if (!results[k]) {
      out.push_back(std::move(c));
      continue;
    }
    if (results[k]->matched) {
      c.match = std::move(*results[k]);
      c.advance(CitationStatus::verified);
      continue;
    }
    // Across chained databases keep the closest miss.
    if (!c.match || results[k]->score > c.match->score) c.match = std::move(*results[k]);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<Citation> verify(std::vector<Citation> citations, const BibDatabase& db, const MatcherConfig& cfg) {
  return verify_with(std::move(citations), db, cfg, true,
                     [](std::string_view t, const BibDatabase& d, const MatcherConfig& c) {
                       return find_best_match(t, d, c);
                     });
}

namespace reference {

MatchResult find_best_match(std::string_view title, const BibDatabase& db, const MatcherConfig& cfg) {
  check_inputs(db, cfg);
  const std::u32string query = utf8::decode(normalize_title(title));
  Best best;
  std::u32string entry;
  for (std::size_t e = 0; e < db.size(); ++e) {
    utf8::decode_into(db.entry(e).normalized_title, entry);
    const std::size_t d = levenshtein_dp(query, entry);
    best.offer(score_from_distance(d, std::max(query.size(), entry.size())), e);
  }
  return to_result(db, best, cfg.threshold);
}

std::vector<Citation> verify(std::vector<Citation> citations, const BibDatabase& db, const MatcherConfig& cfg) {
  return verify_with(std::move(citations), db, cfg, false,
                     [](std::string_view t, const BibDatabase& d, const MatcherConfig& c) {
                       return reference::find_best_match(t, d, c);
                     });
}

}  // namespace reference

}  // namespace hallucite
