#include "cscope/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>

#include "cscope/errors.hpp"
#include "cscope/rng.hpp"

namespace cscope {

namespace {

double mean_of(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

double pearson_r(std::span<const double> xs, std::span<const double> ys) {
  if (constant(xs) || constant(ys)) throw ZeroVariance("pearson input is constant");
  const double mx = mean_of(xs);
  const double my = mean_of(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw ZeroVariance("pearson input has zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

void check_inputs(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw LengthMismatch("pearson inputs differ in length");
  if (xs.size() < 3) throw TooFew("pearson needs at least three points");
}

}  // namespace

Correlation pearson(std::span<const double> xs, std::span<const double> ys) {
  check_inputs(xs, ys);
  Correlation c;
  c.n = xs.size();
  c.r = pearson_r(xs, ys);
  const double df = static_cast<double>(c.n) - 2.0;
  // With t = r sqrt(df / (1 - r^2)), df / (df + t^2) = 1 - r^2, so the
  // two-tailed Student-t tail is I_{1-r^2}(df/2, 1/2).
  const double one_minus_r2 = (1.0 - c.r) * (1.0 + c.r);
  c.p = one_minus_r2 <= 0.0 ? 0.0 : boost::math::ibeta(df / 2.0, 0.5, one_minus_r2);
  return c;
}

double pearson_permutation_p(std::span<const double> xs, std::span<const double> ys,
                             std::size_t permutations, std::uint64_t seed) {
  check_inputs(xs, ys);
  if (permutations == 0) throw InvalidArgument("permutation count must be positive");
  const double observed = std::abs(pearson_r(xs, ys));
  std::vector<double> shuffled(ys.begin(), ys.end());
  Rng rng(seed);
  std::size_t extreme = 0;
  for (std::size_t i = 0; i < permutations; ++i) {
    rng.shuffle(shuffled.begin(), shuffled.end());
    if (std::abs(pearson_r(xs, shuffled)) >= observed - 1e-12) ++extreme;
  }
  return static_cast<double>(extreme + 1) / static_cast<double>(permutations + 1);
}

IndicatorVector indicator(std::span<const ControversyReport> reports, Indicator which) {
  IndicatorVector out;
  for (const auto& r : reports) {
    if (!r.rwc) continue;
    double value = 0.0;
    switch (which) {
      case Indicator::Controversy: value = r.rwc->score; break;
      case Indicator::NodeCount: value = static_cast<double>(r.node_count); break;
      case Indicator::SentimentMean:
        if (!r.sentiment) continue;
        value = r.sentiment->mean;
        break;
      case Indicator::SentimentStd:
        if (!r.sentiment) continue;
        value = r.sentiment->std;
        break;
    }
    if (!std::isfinite(value)) continue;
    out.points.push_back({r.subtopic, r.window, value});
  }
  return out;
}

Correlation correlate(const IndicatorVector& a, const IndicatorVector& b) {
  std::map<std::pair<std::string, std::string>, double> rhs;
  for (const auto& p : b.points) {
    if (!rhs.emplace(std::pair{p.subtopic, p.window}, p.value).second) {
      throw InvalidArgument("duplicate indicator key (" + p.subtopic + ", " + p.window + ")");
    }
  }
  std::vector<double> xs, ys;
  for (const auto& p : a.points) {
    auto it = rhs.find({p.subtopic, p.window});
    if (it == rhs.end()) continue;
    xs.push_back(p.value);
    ys.push_back(it->second);
  }
  return pearson(xs, ys);
}

IndicatorCorrelations correlate_indicators(std::span<const ControversyReport> reports) {
  const auto rwc = indicator(reports, Indicator::Controversy);
  auto attempt = [&](Indicator which) -> std::optional<Correlation> {
    try {
      return correlate(rwc, indicator(reports, which));
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  return {attempt(Indicator::NodeCount), attempt(Indicator::SentimentMean),
          attempt(Indicator::SentimentStd)};
}

Classification classify_subtopics(std::span<const ControversyReport> reports,
                                  const Thresholds& t) {
  Classification c;
  auto group_for = [&](const std::string& window) -> WindowGroups& {
    for (auto& g : c.windows) {
      if (g.window == window) return g;
    }
    c.windows.push_back(WindowGroups{window, {}, {}, {}, {}, {}, {}});
    return c.windows.back();
  };
  for (const auto& r : reports) {
    auto& g = group_for(r.window);
    if (!r.scored()) {
      g.unscored.push_back(r.subtopic);
    } else if (r.high_controversy(t)) {
      g.high.push_back(r.subtopic);
    } else {
      g.low.push_back(r.subtopic);
    }
    if (r.scored() && r.large(t)) {
      (r.high_controversy(t) ? g.large_high : g.large_low).push_back(r.subtopic);
    }
    if (r.low_sentiment(t)) g.low_sentiment.push_back(r.subtopic);
  }
  return c;
}

std::string emit_groups_markdown(const Classification& c) {
  auto join = [](const std::vector<std::string>& v) {
    if (v.empty()) return std::string("-");
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
    return out;
  };
  std::ostringstream out;
  out << "| Window | High controversy | Low controversy |\n|---|---|---|\n";
  for (const auto& g : c.windows) {
    out << "| " << g.window << " | " << join(g.large_high) << " | " << join(g.large_low) << " |\n";
  }
  out << "\n| Window | Low sentiment |\n|---|---|\n";
  for (const auto& g : c.windows) out << "| " << g.window << " | " << join(g.low_sentiment) << " |\n";
  return out.str();
}

}  // namespace cscope
