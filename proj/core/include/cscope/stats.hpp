#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cscope/report.hpp"

namespace cscope {

struct Correlation {
  double r = 0.0;
  double p = 1.0;  // two-tailed
  std::size_t n = 0;
};

/// Sample Pearson coefficient with a two-tailed p-value from Student's t on
/// n - 2 degrees of freedom. Throws LengthMismatch, TooFew (n < 3) and
/// ZeroVariance.
Correlation pearson(std::span<const double> xs, std::span<const double> ys);

/// Two-tailed permutation p-value for |r|, for cross-checking pearson().
double pearson_permutation_p(std::span<const double> xs, std::span<const double> ys,
                             std::size_t permutations, std::uint64_t seed);

struct IndicatorPoint {
  std::string subtopic;
  std::string window;
  double value = 0.0;
};

/// Values keyed by (subtopic, window); keys unique, values finite.
struct IndicatorVector {
  std::vector<IndicatorPoint> points;
};

enum class Indicator { Controversy, NodeCount, SentimentMean, SentimentStd };

/// Scored reports only; cells without the indicator are left out.
IndicatorVector indicator(std::span<const ControversyReport> reports, Indicator which);

/// Pearson over the (subtopic, window) keys present in both vectors.
Correlation correlate(const IndicatorVector& a, const IndicatorVector& b);

/// Controversy against scale, sentiment mean and sentiment std. Entries whose
/// correlation is undefined (too few points, zero variance) are absent.
struct IndicatorCorrelations {
  std::optional<Correlation> node_count;
  std::optional<Correlation> sentiment_mean;
  std::optional<Correlation> sentiment_std;
};
IndicatorCorrelations correlate_indicators(std::span<const ControversyReport> reports);

struct WindowGroups {
  std::string window;
  // controversy view: every report lands in exactly one
  std::vector<std::string> high;
  std::vector<std::string> low;
  std::vector<std::string> unscored;  // dashes
  // scale view over scored reports with node_count >= size threshold
  std::vector<std::string> large_high;
  std::vector<std::string> large_low;
  // sentiment view
  std::vector<std::string> low_sentiment;
};

struct Classification {
  std::vector<WindowGroups> windows;  // in first-seen order
};

Classification classify_subtopics(std::span<const ControversyReport> reports,
                                  const Thresholds& thresholds = {});

/// Markdown rendering of the scale and sentiment views.
std::string emit_groups_markdown(const Classification& c);

}  // namespace cscope
