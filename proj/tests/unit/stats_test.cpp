#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cscope/errors.hpp"
#include "cscope/stats.hpp"
#include "pearson_fixtures.hpp"

namespace {

using namespace cscope;
using ::testing::ElementsAre;
using ::testing::IsEmpty;

ControversyReport scored(std::string subtopic, std::string window, double score, std::size_t nodes = 1000,
                         std::optional<double> senti = std::nullopt) {
  ControversyReport r;
  r.subtopic = std::move(subtopic);
  r.window = std::move(window);
  r.node_count = nodes;
  r.undersized = false;
  r.rwc = RwcResult{};
  r.rwc->score = score;
  if (senti) r.sentiment = SentimentSummary{*senti, 0.1, 10};
  return r;
}

ControversyReport dash(std::string subtopic, std::string window) {
  ControversyReport r;
  r.subtopic = std::move(subtopic);
  r.window = std::move(window);
  r.node_count = 12;
  return r;
}

TEST(Pearson, ReferenceFixtures) {
  ASSERT_EQ(std::size(kPearsonFixtures), 20u);
  for (const auto& f : kPearsonFixtures) {
    const auto c = pearson(f.xs, f.ys);
    EXPECT_NEAR(c.r, f.r, 1e-9);
    EXPECT_NEAR(c.p, f.p, 1e-6);
    EXPECT_EQ(c.n, f.xs.size());
  }
}

TEST(Pearson, SmallExample) {
  const std::vector<double> xs{1, 2, 3, 4, 5}, ys{2, 1, 4, 3, 5};
  const auto c = pearson(xs, ys);
  EXPECT_NEAR(c.r, 0.8, 1e-9);
  EXPECT_NEAR(c.p, 0.10408803866182799, 1e-6);
}

TEST(Pearson, PerfectCorrelationIsExact) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs(3 + rng() % 50);
    for (auto& x : xs) x = u(rng);
    std::vector<double> neg;
    for (double x : xs) neg.push_back(-x);
    const auto same = pearson(xs, xs);
    const auto opp = pearson(xs, neg);
    EXPECT_EQ(same.r, 1.0);
    EXPECT_EQ(same.p, 0.0);
    EXPECT_EQ(opp.r, -1.0);
    EXPECT_EQ(opp.p, 0.0);
  }
}

TEST(Pearson, Errors) {
  const std::vector<double> a{1, 2, 3}, b{1, 2}, flat{4, 4, 4};
  EXPECT_THROW(pearson(a, b), LengthMismatch);
  EXPECT_THROW(pearson(b, b), TooFew);
  EXPECT_THROW(pearson(a, flat), ZeroVariance);
  EXPECT_THROW(pearson(flat, a), ZeroVariance);
}

TEST(Pearson, SymmetryAffineAndNegation) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> xs(10 + rng() % 30), ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = z(rng);
      ys[i] = 0.4 * xs[i] + z(rng);
    }
    const auto base = pearson(xs, ys);
    EXPECT_NEAR(pearson(ys, xs).r, base.r, 1e-12);
    std::vector<double> affine, neg;
    for (double x : xs) {
      affine.push_back(3.5 * x - 7.0);
      neg.push_back(-x);
    }
    EXPECT_NEAR(pearson(affine, ys).r, base.r, 1e-12);
    const auto flipped = pearson(neg, ys);
    EXPECT_NEAR(flipped.r, -base.r, 1e-12);
    EXPECT_NEAR(flipped.p, base.p, 1e-12);
    EXPECT_GE(base.p, 0.0);
    EXPECT_LE(base.p, 1.0);
  }
}

TEST(Pearson, PermutationAgreesWithStudentT) {
  // The t approximation is only close to the exact permutation law once n is
  // moderate, so short fixtures are skipped.
  std::size_t checked = 0;
  for (std::size_t i = 0; i < kPearsonFixtures.size(); ++i) {
    const auto& f = kPearsonFixtures[i];
    if (f.xs.size() < 20) continue;
    const double perm = pearson_permutation_p(f.xs, f.ys, 20000, 3);
    EXPECT_NEAR(perm, f.p, 0.02) << "fixture " << i << " n " << f.xs.size();
    ++checked;
  }
  EXPECT_GE(checked, 3u);
}

TEST(Classify, PublishedThresholdCells) {
  const std::vector<ControversyReport> rs{scored("Vaccine", "Jul", 0.801), scored("ALL", "Aug", 0.298),
                                          scored("edge", "Aug", 0.3), dash("GoTo", "Feb")};
  const auto c = classify_subtopics(rs);
  ASSERT_EQ(c.windows.size(), 3u);
  EXPECT_THAT(c.windows[0].high, ElementsAre("Vaccine"));
  EXPECT_THAT(c.windows[1].low, ElementsAre("ALL", "edge"));
  EXPECT_THAT(c.windows[1].high, IsEmpty());
  EXPECT_THAT(c.windows[2].unscored, ElementsAre("GoTo"));
}

TEST(Classify, SizeAndSentimentViews) {
  Thresholds t;
  const std::vector<ControversyReport> rs{scored("a", "w", 0.5, 10000, -0.6), scored("b", "w", 0.1, 20000, -0.5),
                                          scored("c", "w", 0.9, 9999, -0.7)};
  const auto c = classify_subtopics(rs, t);
  ASSERT_EQ(c.windows.size(), 1u);
  EXPECT_THAT(c.windows[0].large_high, ElementsAre("a"));
  EXPECT_THAT(c.windows[0].large_low, ElementsAre("b"));
  EXPECT_THAT(c.windows[0].low_sentiment, ElementsAre("a", "c"));
}

TEST(Classify, GroupsPartitionReports) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> s(-1.0, 1.0);
  std::vector<ControversyReport> rs;
  for (int w = 0; w < 4; ++w) {
    for (int k = 0; k < 25; ++k) {
      const auto name = "t" + std::to_string(k);
      const auto win = "w" + std::to_string(w);
      rs.push_back(rng() % 4 ? scored(name, win, s(rng), rng() % 20000) : dash(name, win));
    }
  }
  for (const auto& g : classify_subtopics(rs).windows) {
    EXPECT_EQ(g.high.size() + g.low.size() + g.unscored.size(), 25u);
    std::set<std::string> all(g.high.begin(), g.high.end());
    all.insert(g.low.begin(), g.low.end());
    all.insert(g.unscored.begin(), g.unscored.end());
    EXPECT_EQ(all.size(), 25u);
  }
}

TEST(Indicators, JoinOnSubtopicAndWindow) {
  const std::vector<ControversyReport> rs{scored("a", "1", 0.1, 900, 0.2), scored("b", "1", 0.4, 1500, -0.1),
                                          scored("c", "1", 0.6, 2500, -0.3), scored("d", "2", 0.2, 1100),
                                          dash("e", "2")};
  const auto senti = indicator(rs, Indicator::SentimentMean);
  EXPECT_EQ(senti.points.size(), 3u);
  EXPECT_EQ(indicator(rs, Indicator::NodeCount).points.size(), 4u);
  const auto c = correlate(indicator(rs, Indicator::Controversy), senti);
  EXPECT_EQ(c.n, 3u);
  EXPECT_LT(c.r, 0.0);
  const auto all = correlate_indicators(rs);
  ASSERT_TRUE(all.node_count.has_value());
  EXPECT_GT(all.node_count->r, 0.9);
  EXPECT_FALSE(all.sentiment_std.has_value());  // constant std -> zero variance
}

TEST(GroupsMarkdown, Layout) {
  const std::vector<ControversyReport> rs{scored("a", "Jul", 0.5, 10000, -0.6), scored("b", "Jul", 0.1, 10000)};
  EXPECT_EQ(emit_groups_markdown(classify_subtopics(rs)),
            "| Window | High controversy | Low controversy |\n|---|---|---|\n| Jul | a | b |\n\n"
            "| Window | Low sentiment |\n|---|---|\n| Jul | a |\n");
}

}  // namespace
