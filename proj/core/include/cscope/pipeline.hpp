#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cscope/controversy.hpp"
#include "cscope/graph.hpp"
#include "cscope/ingest.hpp"
#include "cscope/report.hpp"
#include "cscope/sentiment.hpp"
#include "cscope/subtopic.hpp"

namespace cscope {

/// Subtopic label used for the unfiltered reference row.
inline constexpr std::string_view kAllSubtopics = "ALL";

struct PipelineConfig {
  std::filesystem::path input;
  std::string timezone = "UTC";
  std::vector<std::string> windows;        // "YYYY-MM" or "start..end"; empty = months in data

  // Phase 1
  std::size_t top_n = 50;
  std::vector<std::filesystem::path> stopword_files;           // custom categories
  std::vector<std::filesystem::path> standard_stopword_files;
  std::vector<std::string> noun_tags{"NOUN"};
  CountMode count_mode = CountMode::Occurrences;
  bool global_phase1 = false;              // one frequency list over all windows

  // Pre-specified subtopics skip Phase 1 when non-empty.
  std::vector<std::string> queries;
  bool include_all = false;                // add an unfiltered "ALL" row

  // Phase 2
  GraphPrepOptions graph;
  double balance_eps = 0.05;
  RwcConfig rwc;
  std::size_t mc_walks = 100000;
  bool mc_check = false;                   // run Monte Carlo next to the solver
  double mc_tolerance = 0.02;

  std::filesystem::path lexicon;
  Thresholds thresholds;
  std::uint64_t seed = 1;
  std::size_t workers = 0;                 // 0 = hardware concurrency

  std::filesystem::path output;
  ReportFormat format = ReportFormat::Csv;
  std::filesystem::path graph_dump_dir;

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// Reads a flat JSON object whose keys mirror the CLI flag names with
/// underscores (e.g. "top_n", "k_top", "score_thresh"). Unknown keys are an
/// error. Relative paths resolve against base_dir.
PipelineConfig config_from_json(std::string_view json_text,
                                const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);

/// Everything run_pipeline reads from disk.
struct PipelineInputs {
  std::vector<InteractionRecord> records;
  StopwordConfig stopwords;
  PolarityLexicon lexicon;
};

/// Loads records, stopword lists and lexicon. A file with no records is an
/// empty corpus; a file whose lines are all malformed is a ConfigError.
PipelineInputs load_inputs(const PipelineConfig& cfg);

/// Per window: Phase-1 shortlist (or the pre-specified queries), then per
/// subtopic filter -> prepare graph -> bisect -> RWC, plus sentiment. Cells
/// are independent and run on a worker pool; the result is ordered by window,
/// then subtopic rank. Cell failures are recorded in the report.
std::vector<ControversyReport> run_pipeline(const PipelineConfig& cfg, const PipelineInputs& inputs);
std::vector<ControversyReport> run_pipeline(const PipelineConfig& cfg);

/// Writes via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

}  // namespace cscope
