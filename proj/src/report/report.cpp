// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <omp.h>
#include <sys/resource.h>
#include <sys/utsname.h>

#include <chrono>
#include <cstdio>
#include <ctime>

#include "hallucite/errors.hpp"
#include "hallucite/extractor.hpp"
#include "hallucite/report.hpp"

namespace hallucite {

namespace {

constexpr std::array<Stage, 4> kStages = {Stage::extractor, Stage::recognizer, Stage::matcher, Stage::total};

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::ordered_json manifest_json(const DbManifest& m) {
  nlohmann::ordered_json j;
  j["db_name"] = m.db_name;
  j["version"] = m.version;
  j["entry_count"] = m.entry_count;
  j["created_at"] = m.created_at;
  j["normalization"] = m.normalization;
  j["source_files"] = nlohmann::ordered_json::array();
  for (const auto& s : m.source_files) j["source_files"].push_back({{"path", s.path}, {"sha256", s.sha256}});
  return j;
}

nlohmann::ordered_json pins_json(const PinReport& p) {
  nlohmann::ordered_json j;
  j["pass"] = p.pass;
  j["failures"] = nlohmann::ordered_json::array();
  for (const auto& f : p.failures) {
    j["failures"].push_back(
        {{"db_name", f.db_name}, {"locked_version", f.locked_version}, {"actual_version", f.actual_version}});
  }
  j["warnings"] = p.warnings;
  return j;
}

}  // namespace

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::extractor: return "extractor";
    case Stage::recognizer: return "recognizer";
    case Stage::matcher: return "matcher";
    case Stage::total: return "total";
  }
  return "total";
}

std::vector<TimingRow> summarize_timings(std::span<const std::vector<StageTiming>> papers) {
  std::vector<TimingRow> rows;
  for (Stage stage : kStages) {
    double sum = 0;
    std::size_t citations = 0;
    for (const auto& paper : papers) {
      for (const auto& t : paper) {
        if (t.stage != stage) continue;
        sum += t.elapsed_ms;
        citations += t.unit_count;
      }
    }
    TimingRow row;
    row.stage = stage;
    row.ms_per_paper = papers.empty() ? 0.0 : sum / static_cast<double>(papers.size());
    if (citations > 0) row.ms_per_citation = sum / static_cast<double>(citations);
    rows.push_back(row);
  }
  return rows;
}

std::string format_timing_table(std::span<const TimingRow> rows) {
  std::string out = "stage        ms/paper   ms/citation\n";
  char line[96];
  for (const auto& row : rows) {
    char per_citation[32] = "-";
    if (row.ms_per_citation) std::snprintf(per_citation, sizeof per_citation, "%.2f", *row.ms_per_citation);
    std::snprintf(line, sizeof line, "%-11s %9.2f  %12s\n", std::string(to_string(row.stage)).c_str(),
                  row.ms_per_paper, per_citation);
    out += line;
  }
  return out;
}

EnvironmentProfile capture_environment(bool with_memory) {
  EnvironmentProfile env;
  utsname u{};
  if (uname(&u) == 0) env.platform = std::string(u.sysname) + " " + u.machine;
#if defined(__clang__)
  env.compiler = "clang " __clang_version__;
#elif defined(__GNUC__)
  env.compiler = "gcc " __VERSION__;
#endif
  env.threads = omp_get_max_threads();
  if (with_memory) {
    rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) == 0) env.peak_rss_kb = usage.ru_maxrss;
  }
  return env;
}

nlohmann::ordered_json report_to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["input_path"] = r.input_path;
  j["generated_at"] = r.generated_at;
  j["labeler"] = {{"name", r.labeler_name}, {"version", r.labeler_version}};
  j["threshold"] = r.threshold;
  j["databases"] = nlohmann::ordered_json::array();
  for (const auto& m : r.databases) j["databases"].push_back(manifest_json(m));
  j["pins"] = r.pins ? pins_json(*r.pins) : nlohmann::ordered_json(nullptr);
  j["counts"] = {{"extracted", r.counts.extracted},
                 {"recognized", r.counts.recognized},
                 {"unverifiable", r.counts.unverifiable},
                 {"flagged", r.counts.flagged}};
  j["flagged"] = nlohmann::ordered_json::array();
  for (const auto& c : r.flagged) j["flagged"].push_back(nlohmann::ordered_json::parse(citation_to_record(c).dump()));
  j["unverifiable"] = nlohmann::ordered_json::array();
  for (const auto& c : r.unverifiable) j["unverifiable"].push_back(nlohmann::ordered_json::parse(citation_to_record(c).dump()));
  j["timings"] = nlohmann::ordered_json::array();
  for (const auto& t : r.timings) {
    j["timings"].push_back({{"stage", to_string(t.stage)}, {"elapsed_ms", t.elapsed_ms}, {"unit_count", t.unit_count}});
  }
  nlohmann::ordered_json env;
  env["platform"] = r.environment.platform;
  env["compiler"] = r.environment.compiler;
  env["threads"] = r.environment.threads;
  if (r.environment.peak_rss_kb) env["peak_rss_kb"] = *r.environment.peak_rss_kb;
  j["environment"] = env;
  return j;
}

VerificationReport check_document(const std::filesystem::path& pdf, const PipelineOptions& options) {
  if (options.databases.empty()) throw InvalidConfig("no bibliographic database configured");
  if (options.labeler == nullptr) throw InvalidConfig("no labeler configured");
  options.matcher.validate();

  VerificationReport report;
  report.input_path = pdf.string();
  report.generated_at = utc_now();
  report.labeler_name = options.labeler->name();
  report.labeler_version = options.labeler->version();
  report.threshold = options.matcher.threshold;
  for (const auto* db : options.databases) report.databases.push_back(db->manifest());

  const auto total_start = std::chrono::steady_clock::now();
  auto [extracted, t_extract] = stopwatch(Stage::extractor, [&] { return extract_references(pdf); });
  t_extract.unit_count = extracted.size();

  auto [parsed, t_recognize] =
      stopwatch(Stage::recognizer, [&] { return parse_batch(std::move(extracted), *options.labeler); });
  t_recognize.unit_count = parsed.size();

  std::vector<Citation> recognized;
  for (auto& c : parsed) {
    if (c.status == CitationStatus::unverifiable) {
      report.unverifiable.push_back(std::move(c));
    } else {
      recognized.push_back(std::move(c));
    }
  }
  report.counts.extracted = parsed.size();
  report.counts.unverifiable = report.unverifiable.size();
  report.counts.recognized = recognized.size();

  auto [flagged, t_match] = stopwatch(Stage::matcher, [&] {
    std::vector<Citation> remaining = std::move(recognized);
    for (const auto* db : options.databases) {
      MatcherConfig cfg = options.matcher;
      cfg.db_ref = db->name();
      remaining = verify(std::move(remaining), *db, cfg);
    }
    return remaining;
  });
  t_match.unit_count = report.counts.recognized;
  report.flagged = std::move(flagged);
  report.counts.flagged = report.flagged.size();

  const auto total_stop = std::chrono::steady_clock::now();
  StageTiming total{Stage::total, std::chrono::duration<double, std::milli>(total_stop - total_start).count(),
                    report.counts.extracted};
  report.timings = {t_extract, t_recognize, t_match, total};
  report.environment = capture_environment(options.profile_memory);
  return report;
}

std::string render_terminal(const VerificationReport& report) {
  if (report.flagged.empty() && report.unverifiable.empty()) return "All Clear!\n";
  std::string out;
  for (const auto& c : report.flagged) {
    const auto record = field_record(c);
    out += "{\"author\": " + record["author"].dump() + ", \"title\": " + record["title"].dump() + "}\n";
  }
  if (!report.unverifiable.empty()) {
    out += "Unverifiable (no title recognized):\n";
    for (const auto& c : report.unverifiable) out += "  " + c.raw_text + "\n";
  }
  return out;
}

}  // namespace hallucite
