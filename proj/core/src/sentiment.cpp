#include "cscope/sentiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "cscope/errors.hpp"

namespace cscope {

void PolarityLexicon::set(std::string surface, double polarity) {
  if (surface.empty()) throw InvalidArgument("lexicon entry with empty surface");
  if (!(polarity >= -1.0 && polarity <= 1.0)) {
    throw InvalidArgument("polarity of '" + surface + "' outside [-1, 1]");
  }
  polarity_[std::move(surface)] = polarity;
}

std::optional<double> PolarityLexicon::find(const std::string& surface) const {
  auto it = polarity_.find(surface);
  if (it == polarity_.end()) return std::nullopt;
  return it->second;
}

PolarityLexicon PolarityLexicon::read(std::istream& in) {
  PolarityLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError("lexicon line " + std::to_string(lineno) + ": expected surface<TAB>polarity");
    }
    const std::string_view value(line.data() + tab + 1, line.size() - tab - 1);
    double polarity = 0.0;
    auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), polarity);
    if (ec != std::errc{} || p != value.data() + value.size()) {
      throw ParseError("lexicon line " + std::to_string(lineno) + ": bad polarity");
    }
    try {
      lex.set(line.substr(0, tab), polarity);
    } catch (const InvalidArgument& e) {
      throw ParseError("lexicon line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return lex;
}

PolarityLexicon PolarityLexicon::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open lexicon " + path.string());
  return read(in);
}

std::optional<double> score_text(std::span<const Token> tokens, const PolarityLexicon& lex) {
  double sum = 0.0;
  std::size_t matched = 0;
  for (const auto& t : tokens) {
    if (auto v = lex.find(t.surface)) {
      sum += *v;
      ++matched;
    }
  }
  if (matched == 0) return std::nullopt;
  return sum / static_cast<double>(matched);
}

void SentimentAccumulator::add(double x) {
  ++n_;
  const double d = x - mean_;
  mean_ += d / static_cast<double>(n_);
  m2_ += d * (x - mean_);
}

void SentimentAccumulator::merge(const SentimentAccumulator& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const auto n = n_ + o.n_;
  const double d = o.mean_ - mean_;
  mean_ += d * static_cast<double>(o.n_) / static_cast<double>(n);
  m2_ += o.m2_ + d * d * static_cast<double>(n_) * static_cast<double>(o.n_) / static_cast<double>(n);
  n_ = n;
}

SentimentSummary SentimentAccumulator::summary() const {
  if (n_ == 0) throw AllUnmatched("no record matched the lexicon");
  return {mean_, std::sqrt(std::max(0.0, m2_) / static_cast<double>(n_)), n_};
}

SentimentSummary aggregate_sentiment(std::span<const InteractionRecord> records,
                                     const PolarityLexicon& lex) {
  SentimentAccumulator acc;
  for (const auto& r : records) {
    if (auto s = score_text(r.tokens, lex)) acc.add(*s);
  }
  return acc.summary();
}

}  // namespace cscope
