#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "cscope/errors.hpp"
#include "cscope/sentiment.hpp"

namespace {

using namespace cscope;

PolarityLexicon lexicon() {
  PolarityLexicon lex;
  lex.set("good", 1.0);
  lex.set("bad", -1.0);
  lex.set("fine", 0.4);
  return lex;
}

std::vector<Token> toks(std::initializer_list<const char*> words) {
  std::vector<Token> out;
  for (const char* w : words) out.push_back({w, "ADJ"});
  return out;
}

InteractionRecord rec(int i, std::vector<Token> t) { return {"p" + std::to_string(i), "a", 0, std::move(t), std::nullopt}; }

TEST(ScoreText, Examples) {
  const auto lex = lexicon();
  EXPECT_EQ(score_text(toks({"good"}), lex), 1.0);
  EXPECT_EQ(score_text(toks({"good", "bad"}), lex), 0.0);
  EXPECT_NEAR(*score_text(toks({"good", "good", "bad"}), lex), 1.0 / 3.0, 1e-15);
  EXPECT_FALSE(score_text(toks({"meh"}), lex).has_value());
  EXPECT_FALSE(score_text({}, lex).has_value());
  EXPECT_EQ(score_text(toks({"meh", "fine"}), lex), 0.4);
}

TEST(ScoreText, BoundedAndAntisymmetric) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pol(-1.0, 1.0);
  PolarityLexicon lex, neg;
  for (int i = 0; i < 20; ++i) {
    const double v = pol(rng);
    lex.set("w" + std::to_string(i), v);
    neg.set("w" + std::to_string(i), -v);
  }
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Token> t;
    for (int k = 0; k < 1 + static_cast<int>(rng() % 6); ++k) t.push_back({"w" + std::to_string(rng() % 25), "N"});
    const auto s = score_text(t, lex);
    const auto n = score_text(t, neg);
    ASSERT_EQ(s.has_value(), n.has_value());
    if (!s) continue;
    EXPECT_GE(*s, -1.0);
    EXPECT_LE(*s, 1.0);
    EXPECT_NEAR(*s, -*n, 1e-15);
  }
}

TEST(Lexicon, RejectsOutOfRange) {
  PolarityLexicon lex;
  EXPECT_THROW(lex.set("x", 1.5), InvalidArgument);
  EXPECT_THROW(lex.set("", 0.5), InvalidArgument);
  EXPECT_THROW(lex.set("x", std::nan("")), InvalidArgument);
}

TEST(Lexicon, ReadTsv) {
  std::istringstream in("# surface\tpolarity\ngood\t1\nbad\t-0.75\n\n");
  const auto lex = PolarityLexicon::read(in);
  EXPECT_EQ(lex.size(), 2u);
  EXPECT_EQ(lex.find("bad"), -0.75);
  std::istringstream bad("good 1\n");
  EXPECT_THROW(PolarityLexicon::read(bad), ParseError);
  std::istringstream range("good\t2\n");
  EXPECT_THROW(PolarityLexicon::read(range), ParseError);
}

TEST(Lexicon, ShippedExampleLoads) {
  const auto lex = PolarityLexicon::load(std::filesystem::path(CSCOPE_DATA_DIR) / "lexicon" / "example.tsv");
  EXPECT_GT(lex.size(), 0u);
}

TEST(Aggregate, PlusMinusOne) {
  const std::vector<InteractionRecord> rs{rec(0, toks({"good"})), rec(1, toks({"bad"}))};
  const auto s = aggregate_sentiment(rs, lexicon());
  EXPECT_EQ(s.mean, 0.0);
  EXPECT_EQ(s.std, 1.0);
  EXPECT_EQ(s.matched_count, 2u);
}

TEST(Aggregate, SingleRecordHasZeroStd) {
  const std::vector<InteractionRecord> rs{rec(0, toks({"fine"})), rec(1, toks({"unknown"}))};
  const auto s = aggregate_sentiment(rs, lexicon());
  EXPECT_EQ(s.mean, 0.4);
  EXPECT_EQ(s.std, 0.0);
  EXPECT_EQ(s.matched_count, 1u);
}

TEST(Aggregate, AllUnmatchedThrows) {
  const std::vector<InteractionRecord> rs{rec(0, toks({"x"})), rec(1, {})};
  EXPECT_THROW(aggregate_sentiment(rs, lexicon()), AllUnmatched);
}

TEST(Aggregate, MatchesTwoPassOracle) {
  std::mt19937_64 rng(20);
  std::uniform_real_distribution<double> pol(-1.0, 1.0);
  PolarityLexicon lex;
  for (int i = 0; i < 10; ++i) lex.set("w" + std::to_string(i), pol(rng));
  std::vector<InteractionRecord> rs;
  std::vector<double> scores;
  for (int i = 0; i < 20; ++i) {
    std::vector<Token> t;
    for (int k = 0; k < 3; ++k) t.push_back({"w" + std::to_string(rng() % 12), "N"});
    if (auto s = score_text(t, lex)) scores.push_back(*s);
    rs.push_back(rec(i, std::move(t)));
  }
  double mean = 0.0;
  for (double s : scores) mean += s;
  mean /= static_cast<double>(scores.size());
  double var = 0.0;
  for (double s : scores) var += (s - mean) * (s - mean);
  var /= static_cast<double>(scores.size());

  const auto got = aggregate_sentiment(rs, lex);
  EXPECT_EQ(got.matched_count, scores.size());
  EXPECT_NEAR(got.mean, mean, 1e-12);
  EXPECT_NEAR(got.std, std::sqrt(var), 1e-12);
}

TEST(Aggregate, DuplicatingRecordsKeepsMoments) {
  std::mt19937_64 rng(4);
  std::vector<InteractionRecord> rs;
  const char* words[] = {"good", "bad", "fine", "other"};
  for (int i = 0; i < 30; ++i) rs.push_back(rec(i, toks({words[rng() % 4], words[rng() % 4]})));
  const auto once = aggregate_sentiment(rs, lexicon());
  auto twice = rs;
  twice.insert(twice.end(), rs.begin(), rs.end());
  const auto doubled = aggregate_sentiment(twice, lexicon());
  EXPECT_NEAR(doubled.mean, once.mean, 1e-12);
  EXPECT_NEAR(doubled.std, once.std, 1e-12);
  EXPECT_EQ(doubled.matched_count, 2 * once.matched_count);
  EXPECT_GE(once.mean, -1.0);
  EXPECT_LE(once.mean, 1.0);
  EXPECT_GE(once.std, 0.0);
}

TEST(Accumulator, MergeEqualsSequential) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> xs(101);
  for (auto& x : xs) x = u(rng);
  SentimentAccumulator all, left, right;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    all.add(xs[i]);
    (i < 37 ? left : right).add(xs[i]);
  }
  left.merge(right);
  EXPECT_EQ(left.count(), all.count());
  EXPECT_NEAR(left.summary().mean, all.summary().mean, 1e-14);
  EXPECT_NEAR(left.summary().std, all.summary().std, 1e-14);
  SentimentAccumulator empty;
  empty.merge(all);
  EXPECT_EQ(empty.summary(), all.summary());
}

}  // namespace
