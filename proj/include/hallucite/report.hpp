// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hallucite/bibdb.hpp"
#include "hallucite/citation.hpp"
#include "hallucite/matcher.hpp"
#include "hallucite/recognizer.hpp"

namespace hallucite {

inline constexpr std::string_view kToolName = "hallucitechecker";
inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Stage { extractor, recognizer, matcher, total };

std::string_view to_string(Stage stage);

struct StageTiming {
  Stage stage = Stage::total;
  double elapsed_ms = 0.0;
  std::size_t unit_count = 0;  // citations processed

  bool operator==(const StageTiming&) const = default;
};

/// Runs `work` and measures its wall-clock time.
template <typename F>
auto stopwatch(Stage stage, F&& work) {
  const auto start = std::chrono::steady_clock::now();
  auto result = std::forward<F>(work)();
  const auto stop = std::chrono::steady_clock::now();
  StageTiming timing{stage, std::chrono::duration<double, std::milli>(stop - start).count(), 0};
  return std::pair{std::move(result), timing};
}

/// One row per stage: mean ms per paper and, when any citation was
/// processed, mean ms per citation.
struct TimingRow {
  Stage stage = Stage::total;
  double ms_per_paper = 0.0;
  std::optional<double> ms_per_citation;
};

std::vector<TimingRow> summarize_timings(std::span<const std::vector<StageTiming>> papers);
std::string format_timing_table(std::span<const TimingRow> rows);

struct EnvironmentProfile {
  std::string platform;
  std::string compiler;
  int threads = 1;
  std::optional<long> peak_rss_kb;
};

EnvironmentProfile capture_environment(bool with_memory);

struct ReportCounts {
  std::size_t extracted = 0;
  std::size_t recognized = 0;
  std::size_t unverifiable = 0;
  std::size_t flagged = 0;

  bool operator==(const ReportCounts&) const = default;
};

struct VerificationReport {
  std::string input_path;
  std::string generated_at;
  std::string labeler_name;
  std::string labeler_version;
  double threshold = 0.9;
  std::vector<DbManifest> databases;
  std::optional<PinReport> pins;
  ReportCounts counts;
  std::vector<Citation> flagged;
  std::vector<Citation> unverifiable;
  std::vector<StageTiming> timings;
  EnvironmentProfile environment;
};

nlohmann::ordered_json report_to_json(const VerificationReport& report);

struct PipelineOptions {
  std::vector<const BibDatabase*> databases;  // chained in order
  MatcherConfig matcher;
  const Labeler* labeler = nullptr;
  bool profile_memory = false;
};

/// Extraction, recognition and chained verification of one PDF. Throws the
/// extractor's errors (UnreadableDocument, EmptyDocument, NoReferenceSection).
VerificationReport check_document(const std::filesystem::path& pdf, const PipelineOptions& options);

/// Writes a copy of `source` with translucent highlight annotations over
/// every box of the given citations: yellow for flagged, blue for
/// unverifiable. Nothing is written when both lists are empty; returns
/// whether a file was written. Throws AnnotationFailure.
bool highlight_pdf(const std::filesystem::path& source, std::span<const Citation> flagged,
                   std::span<const Citation> unverifiable, const std::filesystem::path& out);

/// Terminal projection of a report: "All Clear!" or the flagged records.
std::string render_terminal(const VerificationReport& report);

/// The command-line program. Returns 0 (all clear), 1 (candidates found)
/// or 2 (operational error).
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace hallucite
