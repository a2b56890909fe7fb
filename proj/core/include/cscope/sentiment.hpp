#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>

#include "cscope/ingest.hpp"

namespace cscope {

/// Surface -> polarity in [-1, 1].
class PolarityLexicon {
 public:
  PolarityLexicon() = default;

  /// Throws InvalidArgument for empty surfaces or values outside [-1, 1].
  void set(std::string surface, double polarity);
  std::optional<double> find(const std::string& surface) const;
  std::size_t size() const noexcept { return polarity_.size(); }

  /// Lines of `surface<TAB>polarity`; blank lines and '#' comments skipped.
  static PolarityLexicon read(std::istream& in);
  static PolarityLexicon load(const std::filesystem::path& path);

 private:
  std::unordered_map<std::string, double> polarity_;
};

/// Mean polarity of the tokens found in the lexicon, or nullopt when none is.
std::optional<double> score_text(std::span<const Token> tokens, const PolarityLexicon& lex);

struct SentimentSummary {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation
  std::size_t matched_count = 0;

  bool operator==(const SentimentSummary&) const = default;
};

/// Running (count, mean, M2) accumulator; merge() is associative.
class SentimentAccumulator {
 public:
  void add(double x);
  void merge(const SentimentAccumulator& other);
  std::size_t count() const noexcept { return n_; }
  SentimentSummary summary() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

/// Mean and population std of per-record scores; unmatched records are
/// skipped. Throws AllUnmatched when no record scores.
SentimentSummary aggregate_sentiment(std::span<const InteractionRecord> records,
                                     const PolarityLexicon& lex);

}  // namespace cscope
