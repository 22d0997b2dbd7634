// Copyright 2026 The HalluCite Authors
// SPDX-License-Identifier: Apache-2.0

#include <omp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <memory>
#include <ostream>

#include "hallucite/errors.hpp"
#include "hallucite/report.hpp"

namespace hallucite {

namespace {

constexpr int kClear = 0;
constexpr int kCandidates = 1;
constexpr int kFailure = 2;

std::string describe(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) return std::string(err->kind()) + ": " + e.what();
  return e.what();
}

struct CheckArgs {
  std::vector<std::string> inputs;
  std::string output_dir;
  std::vector<std::string> dbs;
  double threshold = 0.9;
  std::string lockfile;
  std::string labeler = "rules";
  bool json_only = false;
  bool no_highlight = false;
  bool profile = false;
  int jobs = 0;
};

struct IngestArgs {
  std::vector<std::string> sources;
  std::string name;
  std::string out;
  std::string delimiter;
  std::string created_at;
};

struct LockArgs {
  std::vector<std::string> dbs;
  std::string out;
};

int run_check(const CheckArgs& args, std::ostream& out, std::ostream& err) {
  if (args.inputs.empty()) {
    err << "error: no input files (use -i)\n";
    return kFailure;
  }
  if (args.dbs.empty()) {
    err << "error: no bibliographic database (use --db)\n";
    return kFailure;
  }
  if (args.jobs > 0) omp_set_num_threads(args.jobs);

  std::vector<BibDatabase> databases;
  std::unique_ptr<Labeler> labeler;
  PipelineOptions options;
  try {
    for (const auto& path : args.dbs) databases.push_back(open_database(path));
    labeler = make_labeler(args.labeler);
    options.matcher.threshold = normalize_threshold(args.threshold);
    options.matcher.validate();
  } catch (const std::exception& e) {
    err << "error: " << describe(e) << "\n";
    return kFailure;
  }
  for (const auto& db : databases) options.databases.push_back(&db);
  options.labeler = labeler.get();
  options.profile_memory = args.profile;

  int code = kClear;
  std::optional<PinReport> pins;
  if (!args.lockfile.empty()) {
    std::vector<DbManifest> manifests;
    for (const auto& db : databases) manifests.push_back(db.manifest());
    try {
      pins = pin_check(manifests, args.lockfile);
    } catch (const std::exception& e) {
      err << "error: " << describe(e) << "\n";
      return kFailure;
    }
    if (!pins->pass) {
      err << "error: " << pins->summary() << "\n";
      code = kFailure;
    } else if (!pins->warnings.empty()) {
      err << pins->summary() << "\n";
    }
  }

  if (!args.output_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(args.output_dir, ec);
    if (ec) {
      err << "error: cannot create " << args.output_dir << ": " << ec.message() << "\n";
      return kFailure;
    }
  }

  nlohmann::ordered_json json_reports = nlohmann::ordered_json::array();
  std::vector<std::vector<StageTiming>> timings;
  for (const auto& input : args.inputs) {
    if (args.inputs.size() > 1 && !args.json_only) out << "# " << input << "\n";
    VerificationReport report;
    try {
      report = check_document(input, options);
    } catch (const std::exception& e) {
      err << "error: " << describe(e) << "\n";
      code = kFailure;
      continue;
    }
    report.pins = pins;
    timings.push_back(report.timings);
    const bool candidates = !report.flagged.empty() || !report.unverifiable.empty();
    if (candidates && code != kFailure) code = kCandidates;
    if (!args.json_only) out << render_terminal(report);
    const auto json = report_to_json(report);
    json_reports.push_back(json);

    if (args.output_dir.empty()) continue;
    const std::filesystem::path dir(args.output_dir);
    const std::string stem = std::filesystem::path(input).stem().string();
    std::ofstream file(dir / (stem + ".report.json"), std::ios::trunc);
    file << json.dump(2) << "\n";
    if (!file) {
      err << "error: cannot write report for " << input << "\n";
      code = kFailure;
    }
    if (args.no_highlight) continue;
    try {
      highlight_pdf(input, report.flagged, report.unverifiable, dir / (stem + ".flagged.pdf"));
    } catch (const std::exception& e) {
      err << "error: " << describe(e) << "\n";
      code = kFailure;
    }
  }

  if (args.json_only) {
    out << (args.inputs.size() == 1 && json_reports.size() == 1 ? json_reports[0] : json_reports).dump(2) << "\n";
  }
  if (args.profile && !timings.empty()) err << format_timing_table(summarize_timings(timings));
  return code;
}

int run_ingest(const IngestArgs& args, std::ostream& out, std::ostream& err) {
  IngestOptions options;
  options.db_name = args.name;
  options.created_at = args.created_at;
  if (args.delimiter == "tab" || args.delimiter == "\\t") {
    options.delimiter = '\t';
  } else if (args.delimiter == "comma") {
    options.delimiter = ',';
  } else if (args.delimiter.size() == 1) {
    options.delimiter = args.delimiter[0];
  } else if (!args.delimiter.empty()) {
    err << "error: unsupported delimiter '" << args.delimiter << "'\n";
    return kFailure;
  }
  try {
    std::vector<std::filesystem::path> sources(args.sources.begin(), args.sources.end());
    const IngestResult result = ingest(sources, options);
    for (const auto& row : result.malformed) err << "warning: line " << row.line << ": " << row.message << "\n";
    if (result.skipped_empty_title > 0) {
      err << "warning: skipped " << result.skipped_empty_title << " row(s) with an empty title\n";
    }
    if (result.duplicate_ids > 0) err << "warning: skipped " << result.duplicate_ids << " duplicate id(s)\n";
    save(result.database, args.out);
    out << "ingested " << result.database.size() << " entries into " << args.out << "\n"
        << "version " << result.database.manifest().version << "\n";
    return kClear;
  } catch (const std::exception& e) {
    err << "error: " << describe(e) << "\n";
    return kFailure;
  }
}

int run_lock(const LockArgs& args, std::ostream& out, std::ostream& err) {
  try {
    std::vector<DbManifest> manifests;
    for (const auto& path : args.dbs) manifests.push_back(open_database(path).manifest());
    write_lockfile(manifests, args.out);
    for (const auto& m : manifests) out << m.db_name << "\t" << m.version << "\n";
    return kClear;
  } catch (const std::exception& e) {
    err << "error: " << describe(e) << "\n";
    return kFailure;
  }
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flags references whose titles match no entry of the given bibliographic databases.",
               std::string(kToolName)};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(0, 1);

  CheckArgs check;
  app.add_option("-i,--input", check.inputs, "PDF files to check")->expected(1, -1);
  app.add_option("-o,--output", check.output_dir, "Directory for JSON reports and highlighted PDFs");
  app.add_option("--db", check.dbs, "Database directory or CSV/TSV file; repeat to chain")->expected(1, -1);
  app.add_option("--threshold", check.threshold, "Similarity threshold, 0-1 or 0-100")->capture_default_str();
  app.add_option("--lockfile", check.lockfile, "Lockfile with db_name<TAB>version pins");
  app.add_option("--labeler", check.labeler, "rules or crf:PATH")->capture_default_str();
  app.add_flag("--json-only", check.json_only, "Print the JSON report instead of the summary");
  app.add_flag("--no-highlight", check.no_highlight, "Do not write highlighted PDFs");
  app.add_flag("--profile", check.profile, "Record peak memory and print per-stage timings");
  app.add_option("--jobs", check.jobs, "Worker threads (default: all cores)")->check(CLI::NonNegativeNumber);

  IngestArgs ingest_args;
  CLI::App* ingest_cmd = app.add_subcommand("ingest", "Build a database from CSV/TSV dumps");
  ingest_cmd->add_option("sources", ingest_args.sources, "Source files")->required()->expected(1, -1);
  ingest_cmd->add_option("--name", ingest_args.name, "Database name")->required();
  ingest_cmd->add_option("--out", ingest_args.out, "Output directory")->required();
  ingest_cmd->add_option("--delimiter", ingest_args.delimiter, "tab, comma or a single character");
  ingest_cmd->add_option("--created-at", ingest_args.created_at, "Override the manifest timestamp");

  LockArgs lock_args;
  CLI::App* lock_cmd = app.add_subcommand("lock", "Write a lockfile pinning database versions");
  lock_cmd->add_option("--db", lock_args.dbs, "Databases to pin")->required()->expected(1, -1);
  lock_cmd->add_option("--out", lock_args.out, "Lockfile path")->required();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kClear : kFailure;
  }

  if (ingest_cmd->parsed()) return run_ingest(ingest_args, out, err);
  if (lock_cmd->parsed()) return run_lock(lock_args, out, err);
  return run_check(check, out, err);
}

}  // namespace hallucite
