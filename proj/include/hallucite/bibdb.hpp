// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hallucite {

struct BibEntry {
  std::string id;
  std::string title;
  std::string normalized_title;

  bool operator==(const BibEntry&) const = default;
};

struct SourceFile {
  std::string path;
  std::string sha256;

  bool operator==(const SourceFile&) const = default;
};

struct DbManifest {
  std::string db_name;
  std::string version;  // SHA-256 over sorted (id, normalized_title)
  std::size_t entry_count = 0;
  std::string created_at;  // UTC, ISO 8601
  std::vector<SourceFile> source_files;
  std::string normalization;  // normalization rule version

  bool operator==(const DbManifest&) const = default;
};

/// Content hash of the entry stream; independent of input order.
std::string compute_version(std::span<const BibEntry> entries);

/// Trigram postings and length buckets over the normalized titles. Built
/// once per database and read-only afterwards.
struct TitleIndex {
  std::vector<std::uint32_t> lengths;  // code points per entry

  // Entries grouped by length: by_length[length_offsets[L] .. length_offsets[L+1]).
  std::vector<std::uint32_t> length_offsets;
  std::vector<std::uint32_t> by_length;

  // CSR postings keyed by hashed trigram. Keys are sorted.
  std::vector<std::uint64_t> keys;
  std::vector<std::uint64_t> offsets;  // keys.size() + 1
  std::vector<std::uint32_t> postings;  // entry ordinals
  std::vector<std::uint8_t> counts;     // occurrences in that entry, saturating

  // (hash of normalized title, entry ordinal), sorted.
  std::vector<std::pair<std::uint64_t, std::uint32_t>> exact;

  // Posting range for a key; empty when the key is absent.
  std::pair<std::size_t, std::size_t> lookup(std::uint64_t key) const;
  // Ordinals whose normalized title hashes like `normalized`, ascending.
  std::span<const std::pair<std::uint64_t, std::uint32_t>> exact_candidates(std::string_view normalized) const;
  std::size_t max_length() const { return length_offsets.empty() ? 0 : length_offsets.size() - 2; }
};

/// Hash of three consecutive code points.
std::uint64_t trigram_key(char32_t a, char32_t b, char32_t c);

/// Distinct trigram keys of `text` with their occurrence counts, sorted by key.
std::vector<std::pair<std::uint64_t, std::uint32_t>> trigram_profile(std::u32string_view text);

/// An immutable, indexed database. Entries are held sorted by id so entry
/// ordinals order the same way ids do.
class BibDatabase {
 public:
  BibDatabase() = default;

  /// Sorts by id, computes the version and builds the index. Throws
  /// CorruptDatabase on duplicate ids or a stale normalized_title.
  static BibDatabase from_entries(DbManifest manifest, std::vector<BibEntry> entries);

  /// Convenience for tests and tools: normalizes titles, fills the manifest.
  static BibDatabase from_titles(std::string db_name,
                                 std::vector<std::pair<std::string, std::string>> id_title);

  const std::string& name() const { return manifest_.db_name; }
  const DbManifest& manifest() const { return manifest_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const BibEntry& entry(std::size_t i) const { return entries_[i]; }
  std::span<const BibEntry> entries() const { return entries_; }
  const TitleIndex& index() const { return index_; }

 private:
  DbManifest manifest_;
  std::vector<BibEntry> entries_;
  TitleIndex index_;
};

struct MalformedRow {
  std::size_t line = 0;
  std::string message;
};

struct IngestOptions {
  std::string db_name;
  std::optional<char> delimiter;  // otherwise from the extension: .tsv/.tab tab, else comma
  std::string created_at;         // empty: now
};

struct IngestResult {
  BibDatabase database;
  std::size_t rows = 0;
  std::size_t skipped_empty_title = 0;
  std::size_t duplicate_ids = 0;
  std::vector<MalformedRow> malformed;
};

/// Reads delimited sources with a header row naming `title` and optionally
/// `id`. Throws MissingTitleColumn; malformed rows are tallied and skipped.
IngestResult ingest(std::span<const std::filesystem::path> sources, const IngestOptions& options);

/// Writes entries.tsv and manifest.txt into `dir` (created if needed).
void save(const BibDatabase& db, const std::filesystem::path& dir);

/// Loads a saved database and rebuilds its index. Throws CorruptDatabase or
/// ManifestMismatch.
BibDatabase load(const std::filesystem::path& dir);

/// Loads a saved directory, or ingests a single CSV/TSV file in memory
/// (created_at then comes from the file's modification time).
BibDatabase open_database(const std::filesystem::path& path);

std::string manifest_to_text(const DbManifest& m);
DbManifest manifest_from_text(std::string_view text);

struct PinFailure {
  std::string db_name;
  std::string locked_version;  // "<unpinned>" when the lockfile lacks the db
  std::string actual_version;

  bool operator==(const PinFailure&) const = default;
};

struct PinReport {
  bool pass = true;
  std::vector<PinFailure> failures;
  std::vector<std::string> warnings;

  std::string summary() const;
};

/// Compares loaded manifests with "db_name<TAB>version" lines. Throws
/// LockfileMissing. An empty lockfile passes with the warning "no pins declared".
PinReport pin_check(std::span<const DbManifest> manifests, const std::filesystem::path& lockfile);

void write_lockfile(std::span<const DbManifest> manifests, const std::filesystem::path& lockfile);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace hallucite
