// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

#include "hallucite/bibdb.hpp"
#include "hallucite/errors.hpp"
#include "hallucite/similarity.hpp"

namespace hallucite {

namespace {

constexpr std::string_view kEntriesFile = "entries.tsv";
constexpr std::string_view kManifestFile = "manifest.txt";

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorruptDatabase(path.string() + ": cannot read");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(a, b - a + 1));
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string utc_timestamp(std::time_t t) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Record {
  std::size_t line = 0;
  std::vector<std::string> fields;
  std::string error;
};

// RFC 4180 records when `quoting`, otherwise plain delimiter splitting.
std::vector<Record> read_records(std::string_view text, char delim, bool quoting) {
  std::vector<Record> out;
  std::size_t pos = 0;
  std::size_t line = 1;
  if (text.starts_with("\xEF\xBB\xBF")) pos = 3;
  while (pos < text.size()) {
    Record rec;
    rec.line = line;
    std::string field;
    bool in_quotes = false;
    bool done = false;
    while (!done) {
      if (pos >= text.size()) {
        if (in_quotes) rec.error = "unterminated quoted field";
        rec.fields.push_back(std::move(field));
        done = true;
        break;
      }
      const char c = text[pos];
      if (in_quotes) {
        if (c == '"') {
          if (pos + 1 < text.size() && text[pos + 1] == '"') {
            field.push_back('"');
            pos += 2;
          } else {
            in_quotes = false;
            ++pos;
          }
        } else {
          if (c == '\n') ++line;
          field.push_back(c);
          ++pos;
        }
      } else if (quoting && c == '"' && field.empty()) {
        in_quotes = true;
        ++pos;
      } else if (c == delim) {
        rec.fields.push_back(std::move(field));
        field.clear();
        ++pos;
      } else if (c == '\n' || c == '\r') {
        rec.fields.push_back(std::move(field));
        if (c == '\r' && pos + 1 < text.size() && text[pos + 1] == '\n') ++pos;
        ++pos;
        ++line;
        done = true;
      } else {
        field.push_back(c);
        ++pos;
      }
    }
    const bool blank = rec.fields.size() == 1 && rec.fields[0].empty() && rec.error.empty();
    if (!blank) out.push_back(std::move(rec));
  }
  return out;
}

std::string escape_field(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string unescape_field(std::string_view s, const std::filesystem::path& path, std::size_t line) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\') {
      out.push_back(s[i]);
      continue;
    }
    if (++i >= s.size()) throw CorruptDatabase(path.string() + ":" + std::to_string(line) + ": dangling escape");
    switch (s[i]) {
      case '\\': out.push_back('\\'); break;
      case 't': out.push_back('\t'); break;
      case 'n': out.push_back('\n'); break;
      case 'r': out.push_back('\r'); break;
      default: throw CorruptDatabase(path.string() + ":" + std::to_string(line) + ": bad escape");
    }
  }
  return out;
}

char delimiter_for(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  return ext == ".tsv" || ext == ".tab" ? '\t' : ',';
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 15]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

std::string compute_version(std::span<const BibEntry> entries) {
  std::vector<std::pair<std::string_view, std::string_view>> rows;
  rows.reserve(entries.size());
  for (const auto& e : entries) rows.emplace_back(e.id, e.normalized_title);
  std::sort(rows.begin(), rows.end());
  std::string stream;
  for (const auto& [id, norm] : rows) {
    stream += escape_field(id);
    stream += '\t';
    stream += escape_field(norm);
    stream += '\n';
  }
  return sha256_hex(stream);
}

IngestResult ingest(std::span<const std::filesystem::path> sources, const IngestOptions& options) {
  if (options.db_name.empty()) throw InvalidConfig("ingest needs a database name");
  IngestResult result;
  DbManifest manifest;
  manifest.db_name = options.db_name;
  manifest.created_at = options.created_at.empty() ? utc_timestamp(std::time(nullptr)) : options.created_at;
  manifest.normalization = std::string(kNormalizationVersion);

  std::vector<BibEntry> entries;
  std::map<std::string, bool> seen;
  std::size_t ordinal = 0;
  for (const auto& source : sources) {
    std::string text;
    try {
      text = read_file(source);
    } catch (const CorruptDatabase&) {
      throw InvalidConfig(source.string() + ": cannot read source");
    }
    manifest.source_files.push_back(SourceFile{source.filename().string(), sha256_hex(text)});
    const char delim = options.delimiter.value_or(delimiter_for(source));
    const auto records = read_records(text, delim, delim != '\t');
    if (records.empty()) throw MissingTitleColumn(source.string() + ": empty file, no header row");

    const auto& header = records.front().fields;
    std::optional<std::size_t> title_col, id_col;
    for (std::size_t c = 0; c < header.size(); ++c) {
      const std::string name = lower(trim(header[c]));
      if (name == "title" && !title_col) title_col = c;
      if (name == "id" && !id_col) id_col = c;
    }
    if (!title_col) throw MissingTitleColumn(source.string() + ": header has no 'title' column");

    for (std::size_t r = 1; r < records.size(); ++r) {
      const Record& rec = records[r];
      if (!rec.error.empty()) {
        result.malformed.push_back({rec.line, rec.error});
        continue;
      }
      if (rec.fields.size() != header.size()) {
        result.malformed.push_back({rec.line, "expected " + std::to_string(header.size()) +
                                                  " columns, found " + std::to_string(rec.fields.size())});
        continue;
      }
      ++result.rows;
      ++ordinal;
      BibEntry e;
      e.title = trim(rec.fields[*title_col]);
      if (e.title.empty()) {
        ++result.skipped_empty_title;
        continue;
      }
      e.id = id_col ? trim(rec.fields[*id_col]) : std::string();
      if (e.id.empty()) e.id = options.db_name + ":" + std::to_string(ordinal);
      if (seen.contains(e.id)) {
        ++result.duplicate_ids;
        continue;
      }
      seen[e.id] = true;
      e.normalized_title = normalize_title(e.title);
      entries.push_back(std::move(e));
    }
  }
  result.database = BibDatabase::from_entries(std::move(manifest), std::move(entries));
  return result;
}

std::string manifest_to_text(const DbManifest& m) {
  std::ostringstream out;
  out << "db_name=" << m.db_name << '\n'
      << "version=" << m.version << '\n'
      << "entry_count=" << m.entry_count << '\n'
      << "created_at=" << m.created_at << '\n'
      << "normalization=" << m.normalization << '\n';
  for (const auto& s : m.source_files) out << "source=" << s.sha256 << ' ' << s.path << '\n';
  return out.str();
}

DbManifest manifest_from_text(std::string_view text) {
  DbManifest m;
  bool have_name = false, have_version = false, have_count = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw CorruptDatabase("manifest line without '=': " + line);
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "db_name") {
      m.db_name = value;
      have_name = true;
    } else if (key == "version") {
      m.version = value;
      have_version = true;
    } else if (key == "entry_count") {
      try {
        std::size_t used = 0;
        m.entry_count = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw CorruptDatabase("manifest entry_count is not a number: " + value);
      }
      have_count = true;
    } else if (key == "created_at") {
      m.created_at = value;
    } else if (key == "normalization") {
      m.normalization = value;
    } else if (key == "source") {
      const auto sp = value.find(' ');
      if (sp == std::string::npos) throw CorruptDatabase("manifest source line malformed: " + value);
      m.source_files.push_back(SourceFile{value.substr(sp + 1), value.substr(0, sp)});
    } else {
      throw CorruptDatabase("unknown manifest key '" + key + "'");
    }
  }
  if (!have_name || !have_version || !have_count) {
    throw CorruptDatabase("manifest lacks db_name, version or entry_count");
  }
  return m;
}

void save(const BibDatabase& db, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / kEntriesFile, std::ios::binary | std::ios::trunc);
    out << "id\ttitle\tnormalized_title\n";
    for (const auto& e : db.entries()) {
      out << escape_field(e.id) << '\t' << escape_field(e.title) << '\t' << escape_field(e.normalized_title)
          << '\n';
    }
    if (!out) throw Error((dir / kEntriesFile).string() + ": write failed");
  }
  std::ofstream out(dir / kManifestFile, std::ios::binary | std::ios::trunc);
  out << manifest_to_text(db.manifest());
  if (!out) throw Error((dir / kManifestFile).string() + ": write failed");
}

BibDatabase load(const std::filesystem::path& dir) {
  const auto manifest_path = dir / kManifestFile;
  const auto entries_path = dir / kEntriesFile;
  if (!std::filesystem::is_regular_file(manifest_path) || !std::filesystem::is_regular_file(entries_path)) {
    throw CorruptDatabase(dir.string() + ": not a database directory (missing manifest.txt or entries.tsv)");
  }
  DbManifest manifest = manifest_from_text(read_file(manifest_path));
  if (manifest.normalization != kNormalizationVersion) {
    throw CorruptDatabase(dir.string() + ": built with normalization rule '" + manifest.normalization +
                          "', this build uses '" + std::string(kNormalizationVersion) + "'; re-ingest");
  }

  const std::string text = read_file(entries_path);
  std::vector<BibEntry> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != "id\ttitle\tnormalized_title") throw CorruptDatabase(entries_path.string() + ": bad header");
      continue;
    }
    if (line.empty()) continue;
    std::vector<std::string_view> cols;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == '\t') {
        cols.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (cols.size() != 3) {
      throw CorruptDatabase(entries_path.string() + ":" + std::to_string(line_no) + ": expected 3 columns");
    }
    entries.push_back(BibEntry{unescape_field(cols[0], entries_path, line_no),
                               unescape_field(cols[1], entries_path, line_no),
                               unescape_field(cols[2], entries_path, line_no)});
  }

  const DbManifest declared = manifest;
  BibDatabase db = BibDatabase::from_entries(std::move(manifest), std::move(entries));
  if (db.manifest().version != declared.version || db.size() != declared.entry_count) {
    throw ManifestMismatch(dir.string() + ": manifest says version " + declared.version + " with " +
                           std::to_string(declared.entry_count) + " entries, data has version " +
                           db.manifest().version + " with " + std::to_string(db.size()) + " entries");
  }
  return db;
}

BibDatabase open_database(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return load(path);
  if (!std::filesystem::is_regular_file(path)) throw CorruptDatabase(path.string() + ": no such database");
  IngestOptions options;
  options.db_name = path.stem().string();
  const auto mtime = std::filesystem::last_write_time(path);
  const auto sys = std::chrono::file_clock::to_sys(mtime);
  options.created_at = utc_timestamp(std::chrono::system_clock::to_time_t(sys));
  const std::filesystem::path sources[] = {path};
  return ingest(sources, options).database;
}

std::string PinReport::summary() const {
  std::string out = pass ? "pins: pass" : "pins: FAIL";
  for (const auto& f : failures) {
    out += "\n  " + f.db_name + ": locked " + f.locked_version + ", loaded " + f.actual_version;
  }
  for (const auto& w : warnings) out += "\n  warning: " + w;
  return out;
}

PinReport pin_check(std::span<const DbManifest> manifests, const std::filesystem::path& lockfile) {
  if (!std::filesystem::is_regular_file(lockfile)) throw LockfileMissing(lockfile.string() + ": lockfile not found");
  std::ifstream in(lockfile);
  std::map<std::string, std::string> pins;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto tab = t.find('\t');
    if (tab == std::string::npos) {
      throw InvalidConfig(lockfile.string() + ":" + std::to_string(line_no) + ": expected db_name<TAB>version");
    }
    pins[trim(t.substr(0, tab))] = trim(t.substr(tab + 1));
  }

  PinReport report;
  if (pins.empty()) {
    report.warnings.push_back("no pins declared");
    return report;
  }
  for (const auto& m : manifests) {
    const auto it = pins.find(m.db_name);
    const std::string locked = it == pins.end() ? "<unpinned>" : it->second;
    if (locked != m.version) report.failures.push_back(PinFailure{m.db_name, locked, m.version});
  }
  for (const auto& [name, version] : pins) {
    const bool loaded = std::any_of(manifests.begin(), manifests.end(),
                                    [&](const DbManifest& m) { return m.db_name == name; });
    if (!loaded) report.warnings.push_back("pinned database '" + name + "' was not loaded");
  }
  report.pass = report.failures.empty();
  return report;
}

void write_lockfile(std::span<const DbManifest> manifests, const std::filesystem::path& lockfile) {
  std::ofstream out(lockfile, std::ios::trunc);
  for (const auto& m : manifests) out << m.db_name << '\t' << m.version << '\n';
  if (!out) throw Error(lockfile.string() + ": write failed");
}

}  // namespace hallucite
