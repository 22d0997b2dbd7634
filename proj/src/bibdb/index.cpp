// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "hallucite/bibdb.hpp"
#include "hallucite/errors.hpp"
#include "hallucite/similarity.hpp"
#include "hallucite/utf8.hpp"

namespace hallucite {

std::uint64_t trigram_key(char32_t a, char32_t b, char32_t c) {
  // Code points fit in 21 bits, so the packing is collision free.
  return (static_cast<std::uint64_t>(a) << 42) | (static_cast<std::uint64_t>(b) << 21) |
         static_cast<std::uint64_t>(c);
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> trigram_profile(std::u32string_view text) {
  std::vector<std::uint64_t> keys;
  if (text.size() >= 3) {
    keys.reserve(text.size() - 2);
    for (std::size_t i = 0; i + 2 < text.size(); ++i) keys.push_back(trigram_key(text[i], text[i + 1], text[i + 2]));
  }
  std::sort(keys.begin(), keys.end());
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  for (std::uint64_t k : keys) {
    if (!out.empty() && out.back().first == k) {
      ++out.back().second;
    } else {
      out.emplace_back(k, 1);
    }
  }
  return out;
}

std::pair<std::size_t, std::size_t> TitleIndex::lookup(std::uint64_t key) const {
  const auto it = std::lower_bound(keys.begin(), keys.end(), key);
  if (it == keys.end() || *it != key) return {0, 0};
  const auto slot = static_cast<std::size_t>(it - keys.begin());
  return {offsets[slot], offsets[slot + 1]};
}

std::span<const std::pair<std::uint64_t, std::uint32_t>> TitleIndex::exact_candidates(
    std::string_view normalized) const {
  const std::uint64_t h = std::hash<std::string_view>{}(normalized);
  const auto lo = std::lower_bound(exact.begin(), exact.end(), std::pair<std::uint64_t, std::uint32_t>{h, 0});
  auto hi = lo;
  while (hi != exact.end() && hi->first == h) ++hi;
  return {lo, hi};
}

namespace {

TitleIndex build_index(std::span<const BibEntry> entries) {
  TitleIndex index;
  const std::size_t n = entries.size();
  index.lengths.resize(n);
  std::u32string scratch;

  // Pass 1: lengths and document frequencies.
  std::unordered_map<std::uint64_t, std::uint32_t> slot_of;
  std::vector<std::uint64_t> slot_key;
  std::vector<std::uint64_t> df;
  std::size_t max_len = 0;
  for (std::size_t i = 0; i < n; ++i) {
    utf8::decode_into(entries[i].normalized_title, scratch);
    index.lengths[i] = static_cast<std::uint32_t>(scratch.size());
    max_len = std::max(max_len, scratch.size());
    for (const auto& [key, count] : trigram_profile(scratch)) {
      const auto [it, inserted] = slot_of.try_emplace(key, static_cast<std::uint32_t>(slot_key.size()));
      if (inserted) {
        slot_key.push_back(key);
        df.push_back(0);
      }
      ++df[it->second];
    }
  }

  // Slots renumbered in key order.
  std::vector<std::uint32_t> order(slot_key.size());
  for (std::uint32_t s = 0; s < order.size(); ++s) order[s] = s;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return slot_key[a] < slot_key[b]; });
  std::vector<std::uint32_t> rank(slot_key.size());
  index.keys.resize(slot_key.size());
  index.offsets.assign(slot_key.size() + 1, 0);
  for (std::uint32_t r = 0; r < order.size(); ++r) {
    rank[order[r]] = r;
    index.keys[r] = slot_key[order[r]];
    index.offsets[r + 1] = index.offsets[r] + df[order[r]];
  }
  index.postings.resize(index.offsets.back());
  index.counts.resize(index.offsets.back());

  // Pass 2: fill postings in entry order.
  std::vector<std::uint64_t> cursor(index.offsets.begin(), index.offsets.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    utf8::decode_into(entries[i].normalized_title, scratch);
    for (const auto& [key, count] : trigram_profile(scratch)) {
      const std::uint32_t r = rank[slot_of.at(key)];
      index.postings[cursor[r]] = static_cast<std::uint32_t>(i);
      index.counts[cursor[r]] = static_cast<std::uint8_t>(std::min<std::uint32_t>(count, 255));
      ++cursor[r];
    }
  }

  index.length_offsets.assign(max_len + 2, 0);
  for (std::uint32_t len : index.lengths) ++index.length_offsets[len + 1];
  for (std::size_t l = 1; l < index.length_offsets.size(); ++l) index.length_offsets[l] += index.length_offsets[l - 1];
  index.by_length.resize(n);
  std::vector<std::uint32_t> fill(index.length_offsets.begin(), index.length_offsets.end() - 1);
  for (std::size_t i = 0; i < n; ++i) index.by_length[fill[index.lengths[i]]++] = static_cast<std::uint32_t>(i);

  index.exact.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    index.exact.emplace_back(std::hash<std::string_view>{}(entries[i].normalized_title), static_cast<std::uint32_t>(i));
  }
  std::sort(index.exact.begin(), index.exact.end());
  return index;
}

}  // namespace

BibDatabase BibDatabase::from_entries(DbManifest manifest, std::vector<BibEntry> entries) {
  if (entries.size() >= (std::size_t{1} << 32) - 1) throw CorruptDatabase("too many entries");
  std::sort(entries.begin(), entries.end(), [](const BibEntry& a, const BibEntry& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0 && entries[i].id == entries[i - 1].id) {
      throw CorruptDatabase(manifest.db_name + ": duplicate id '" + entries[i].id + "'");
    }
    if (normalize_title(entries[i].title) != entries[i].normalized_title) {
      throw CorruptDatabase(manifest.db_name + ": normalized title of '" + entries[i].id +
                            "' does not match the current normalization rule");
    }
  }
  BibDatabase db;
  manifest.entry_count = entries.size();
  manifest.version = compute_version(entries);
  if (manifest.normalization.empty()) manifest.normalization = std::string(kNormalizationVersion);
  db.manifest_ = std::move(manifest);
  db.entries_ = std::move(entries);
  db.index_ = build_index(db.entries_);
  return db;
}

BibDatabase BibDatabase::from_titles(std::string db_name,
                                     std::vector<std::pair<std::string, std::string>> id_title) {
  std::vector<BibEntry> entries;
  entries.reserve(id_title.size());
  for (auto& [id, title] : id_title) {
    BibEntry e;
    e.normalized_title = normalize_title(title);
    e.id = std::move(id);
    e.title = std::move(title);
    entries.push_back(std::move(e));
  }
  DbManifest manifest;
  manifest.db_name = std::move(db_name);
  return from_entries(std::move(manifest), std::move(entries));
}

}  // namespace hallucite
