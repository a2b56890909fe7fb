#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cscope/bipartition.hpp"
#include "cscope/controversy.hpp"
#include "cscope/errors.hpp"
#include "oracles.hpp"

namespace {

using namespace cscope;
using ::testing::UnorderedElementsAreArray;

Bipartition halves(const EndorsementGraph& g) {
  std::vector<Side> side(g.node_count(), Side::Y);
  for (std::size_t v = 0; v < g.node_count() / 2; ++v) side[v] = Side::X;
  return make_bipartition(g, std::move(side));
}

Bipartition swapped(const EndorsementGraph& g, const Bipartition& p) {
  std::vector<Side> side;
  for (auto s : p.side) side.push_back(opposite(s));
  return make_bipartition(g, std::move(side));
}

double oracle_p_same(const EndorsementGraph& g, const Bipartition& p, const RwcConfig& cfg, Side start) {
  const auto same = oracle::sorted_top_k(g, p.side, start, cfg.k_top);
  const auto other = oracle::sorted_top_k(g, p.side, opposite(start), cfg.k_top);
  return oracle::dense_p_same(g, p.side, same, other, start, cfg.restart_prob, cfg.weighted_walk);
}

TEST(HighDegreeNodes, StarCenter) {
  std::vector<NamedEdge> edges;
  for (int i = 1; i <= 6; ++i) edges.push_back({"a", "leaf" + std::to_string(i), 1});
  const auto g = EndorsementGraph::from_edges(edges);
  const auto p = make_bipartition(g, {Side::X, Side::X, Side::X, Side::X, Side::Y, Side::Y, Side::Y});
  EXPECT_THAT(high_degree_nodes(g, p, Side::X, 1), ::testing::ElementsAre(0u));
}

TEST(HighDegreeNodes, TiesBySmallestId) {
  const auto g = oracle::complete_graph(8);
  const auto p = halves(g);
  EXPECT_THAT(high_degree_nodes(g, p, Side::X, 2), UnorderedElementsAreArray({0u, 1u}));
  EXPECT_THAT(high_degree_nodes(g, p, Side::Y, 3), UnorderedElementsAreArray({4u, 5u, 6u}));
}

TEST(HighDegreeNodes, MatchesFullSortOracle) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = oracle::random_connected_graph(60, 0.08, rng);
    const auto p = halves(g);
    for (std::size_t k : {1u, 5u, 10u}) {
      for (Side s : {Side::X, Side::Y}) {
        EXPECT_THAT(high_degree_nodes(g, p, s, k), UnorderedElementsAreArray(oracle::sorted_top_k(g, p.side, s, k)));
      }
    }
  }
}

TEST(HighDegreeNodes, SideTooSmall) {
  const auto g = oracle::complete_graph(6);
  EXPECT_THROW(high_degree_nodes(g, halves(g), Side::X, 3), SideTooSmall);
  EXPECT_NO_THROW(high_degree_nodes(g, halves(g), Side::X, 2));
}

TEST(Absorption, CliquesWithBridgeStayHome) {
  const auto g = oracle::clique_bridge(50, 1);
  const auto p = halves(g);
  RwcConfig cfg;
  cfg.k_top = 2;
  const auto a = absorption_probabilities(g, p, cfg, Side::X);
  EXPECT_LT(a.p_cross, 0.1);
  EXPECT_NEAR(a.p_same + a.p_cross, 1.0, 1e-8);
  const auto mc = rwc_monte_carlo(g, p, cfg, 1000000, 5);
  EXPECT_NEAR(mc.p_xx, a.p_same, 0.01);
}

TEST(Absorption, CompleteGraphIsSymmetric) {
  for (std::size_t n : {24u, 60u, 200u}) {
    const auto g = oracle::complete_graph(n);
    const auto p = halves(g);
    for (Side s : {Side::X, Side::Y}) {
      const auto a = absorption_probabilities(g, p, {}, s);
      EXPECT_NEAR(a.p_same, 0.5, 1e-9);
      EXPECT_NEAR(a.p_cross, 0.5, 1e-9);
    }
    EXPECT_NEAR(rwc_score(g, p).score, 0.0, 1e-6);
  }
}

TEST(Absorption, MatchesDenseSolveAndConserves) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 30 + rng() % 120;
    const auto g = oracle::random_connected_graph(n, 3.0 / static_cast<double>(n), rng, 4);
    const auto p = bisect(g, 0.05, static_cast<std::uint64_t>(trial));
    RwcConfig cfg;
    cfg.k_top = 1 + rng() % 8;
    cfg.restart_prob = 0.05 + 0.5 * static_cast<double>(rng() % 100) / 100.0;
    cfg.weighted_walk = trial % 2;
    for (Side s : {Side::X, Side::Y}) {
      const auto a = absorption_probabilities(g, p, cfg, s);
      EXPECT_NEAR(a.p_same + a.p_cross, 1.0, 1e-8);
      EXPECT_NEAR(a.p_same, oracle_p_same(g, p, cfg, s), 1e-8) << "trial " << trial;
    }
  }
}

TEST(RwcScore, CliquesScoreHigh) {
  const auto g = oracle::clique_bridge(50, 1);
  const auto r = rwc_score(g, halves(g));
  EXPECT_GT(r.score, 0.85);
  EXPECT_DOUBLE_EQ(r.score, r.p_xx * r.p_yy - r.p_xy * r.p_yx);
  const auto mc = rwc_monte_carlo(g, halves(g), {}, 100000, 3);
  EXPECT_NEAR(mc.score, r.score, 0.02);
}

TEST(RwcScore, RandomGraphsScoreLow) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    auto g = largest_component(oracle::random_graph(1000, 0.01, rng));
    const auto p = bisect(g, 0.05, seed);
    EXPECT_LT(std::abs(rwc_score(g, p).score), 0.15) << "seed " << seed;
  }
}

TEST(RwcScore, SwapSymmetry) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = oracle::random_connected_graph(80, 0.06, rng);
    const auto p = bisect(g, 0.05, 1);
    const auto a = rwc_score(g, p);
    const auto b = rwc_score(g, swapped(g, p));
    EXPECT_NEAR(a.score, b.score, 1e-9);
    EXPECT_NEAR(a.p_xx, b.p_yy, 1e-9);
  }
}

TEST(RwcScore, ScoreWithinRange) {
  const auto r = RwcResult::from_probabilities(1.0, 0.0, 1.0, 0.0);
  EXPECT_EQ(r.score, 1.0);
  EXPECT_EQ(RwcResult::from_probabilities(0.0, 1.0, 0.0, 1.0).score, -1.0);
}

TEST(MonteCarlo, SingleWalkIsBoundary) {
  const auto g = oracle::clique_bridge(10, 2);
  const auto r = rwc_monte_carlo(g, halves(g), {.k_top = 2}, 1, 7);
  for (double prob : {r.p_xx, r.p_xy, r.p_yy, r.p_yx}) EXPECT_TRUE(prob == 0.0 || prob == 1.0);
  EXPECT_TRUE(r.score == -1.0 || r.score == 0.0 || r.score == 1.0);
}

TEST(MonteCarlo, FixedSeedRepeats) {
  std::mt19937_64 rng(9);
  const auto g = oracle::random_connected_graph(200, 0.03, rng);
  const auto p = bisect(g, 0.05, 1);
  EXPECT_EQ(rwc_monte_carlo(g, p, {}, 20000, 11), rwc_monte_carlo(g, p, {}, 20000, 11));
}

TEST(MonteCarlo, WeightedWalkAgreesWithSolver) {
  std::mt19937_64 rng(10);
  const auto g = oracle::random_connected_graph(150, 0.04, rng, 6);
  const auto p = bisect(g, 0.05, 1);
  RwcConfig cfg;
  cfg.weighted_walk = true;
  EXPECT_NEAR(rwc_monte_carlo(g, p, cfg, 100000, 2).score, rwc_score(g, p, cfg).score, 0.02);
}

TEST(RwcConfig, Validation) {
  RwcConfig c;
  EXPECT_NO_THROW(c.validate());
  c.restart_prob = 0.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.restart_prob = 1.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.k_top = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(Absorption, NoConvergence) {
  std::mt19937_64 rng(1);
  const auto g = oracle::random_connected_graph(100, 0.05, rng);
  RwcConfig cfg;
  cfg.max_iter = 1;
  EXPECT_THROW(absorption_probabilities(g, bisect(g, 0.05, 1), cfg, Side::X), NoConvergence);
}

}  // namespace
