#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cscope/controversy.hpp"
#include "cscope/sentiment.hpp"

namespace cscope {

/// Grouping thresholds. Score and sentiment comparisons are strict, size is
/// inclusive: high = rwc > score, large = nodes >= size, low = mean < sentiment.
struct Thresholds {
  double score = 0.3;
  std::size_t size = 10000;
  double sentiment = -0.5;
};

/// One (subtopic, window) cell.
struct ControversyReport {
  std::string subtopic;
  std::string window;
  std::size_t record_count = 0;
  std::size_t node_count = 0;
  bool undersized = true;                 // rendered as a dash
  std::optional<RwcResult> rwc;           // present iff sized and scored
  std::optional<double> rwc_monte_carlo;  // present when the MC check ran
  std::optional<SentimentSummary> sentiment;
  std::string error;                      // per-cell failure, empty if none

  bool scored() const noexcept { return rwc.has_value(); }
  bool high_controversy(const Thresholds& t) const { return rwc && rwc->score > t.score; }
  bool large(const Thresholds& t) const { return node_count >= t.size; }
  bool low_sentiment(const Thresholds& t) const { return sentiment && sentiment->mean < t.sentiment; }

  bool operator==(const ControversyReport&) const = default;
};

enum class ReportFormat { Csv, Json, Markdown };

/// "csv", "json", "markdown" (or "md"); throws UnsupportedFormat.
ReportFormat parse_report_format(std::string_view name);

/// Deterministic serialisation. Markdown renders the subtopic x window score
/// table: dashes for unscored cells, bold for scores above the threshold.
std::string emit_report(std::span<const ControversyReport> reports, ReportFormat format,
                        const Thresholds& thresholds = {});

/// Inverse of the CSV emitter.
std::vector<ControversyReport> parse_report_csv(std::string_view csv);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

}  // namespace cscope
