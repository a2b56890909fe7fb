#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "cscope/bipartition.hpp"
#include "cscope/errors.hpp"
#include "oracles.hpp"

namespace {

using namespace cscope;

void expect_valid(const EndorsementGraph& g, const Bipartition& p, double eps) {
  ASSERT_EQ(p.side.size(), g.node_count());
  const auto x = p.count(Side::X);
  const auto y = p.count(Side::Y);
  EXPECT_EQ(x + y, g.node_count());
  EXPECT_GT(x, 0u);
  EXPECT_GT(y, 0u);
  EXPECT_LE(std::max(x, y), max_side_size(g.node_count(), eps));
  const auto cut = cut_size(g, p);
  EXPECT_EQ(cut.edges, p.cut);
  EXPECT_EQ(cut.weight, p.weighted_cut);
  EXPECT_DOUBLE_EQ(p.balance, static_cast<double>(std::max(x, y)) / static_cast<double>(g.node_count()));
}

TEST(MaxSideSize, Bounds) {
  EXPECT_EQ(max_side_size(10, 0.0), 5u);
  EXPECT_EQ(max_side_size(11, 0.0), 6u);
  EXPECT_EQ(max_side_size(100, 0.05), 55u);
  EXPECT_EQ(max_side_size(2, 0.1), 1u);
}

TEST(Bisect, TwoFiveCliquesWithBridge) {
  const auto g = oracle::clique_bridge(5, 1);
  const auto p = bisect(g);
  expect_valid(g, p, 0.05);
  EXPECT_EQ(p.cut, 1u);
  EXPECT_EQ(oracle::exhaustive_min_cut(g, max_side_size(10, 0.05)), 1);
  for (NodeIndex v = 0; v < 10; ++v) EXPECT_EQ(p.side_of(v), v < 5 ? Side::X : Side::Y);
}

TEST(Bisect, SingleEdge) {
  const auto g = EndorsementGraph::from_edges({{"a", "b", 1}});
  const auto p = bisect(g);
  EXPECT_EQ(p.cut, 1u);
  EXPECT_EQ(p.side_of(0), Side::X);
  EXPECT_EQ(p.side_of(1), Side::Y);
}

TEST(Bisect, K4Balanced) {
  const auto g = oracle::complete_graph(4);
  const auto p = bisect(g, 0.0, 1);
  expect_valid(g, p, 0.0);
  EXPECT_EQ(p.count(Side::X), 2u);
  EXPECT_EQ(p.cut, 4u);
}

TEST(Bisect, Errors) {
  EXPECT_THROW(bisect(EndorsementGraph::from_edges({}, {"a"})), TooSmall);
  EXPECT_THROW(bisect(EndorsementGraph{}), TooSmall);
  EXPECT_THROW(bisect(EndorsementGraph::from_edges({{"a", "b", 1}, {"c", "d", 1}})), Disconnected);
  const auto g = oracle::complete_graph(4);
  EXPECT_THROW(bisect(g, 0.2, 1), InvalidArgument);
  EXPECT_THROW(bisect(g, -0.01, 1), InvalidArgument);
}

TEST(Bisect, CliqueFamilyRecoversPlantedSides) {
  for (std::size_t m = 4; m <= 40; m += 6) {
    for (std::size_t b = 1; b < m; b += 2) {
      const auto g = oracle::clique_bridge(m, b);
      const auto p = bisect(g);
      expect_valid(g, p, 0.05);
      EXPECT_EQ(p.cut, b) << "m=" << m << " b=" << b;
      for (NodeIndex v = 0; v < g.node_count(); ++v) {
        EXPECT_EQ(p.side_of(v), v < m ? Side::X : Side::Y) << "m=" << m << " b=" << b;
      }
    }
  }
}

TEST(Bisect, WithinFactorOfOptimalOnSmallGraphs) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 11;
    const auto g = oracle::random_connected_graph(n, 0.3, rng);
    const auto p = bisect(g, 0.05, static_cast<std::uint64_t>(trial));
    expect_valid(g, p, 0.05);
    const auto opt = oracle::exhaustive_min_cut(g, max_side_size(n, 0.05));
    EXPECT_LE(static_cast<double>(p.weighted_cut), 1.5 * static_cast<double>(opt)) << "trial " << trial;
  }
}

TEST(Bisect, DeterministicForSeed) {
  std::mt19937_64 rng(3);
  const auto g = oracle::random_connected_graph(400, 0.02, rng, 3);
  const auto a = bisect(g, 0.05, 9);
  const auto b = bisect(g, 0.05, 9);
  EXPECT_EQ(a.side, b.side);
  expect_valid(g, a, 0.05);
}

TEST(Bisect, RelabelingCommutes) {
  std::mt19937_64 rng(5);
  const auto g = oracle::random_connected_graph(120, 0.05, rng, 2);
  // Order-preserving rename: prefix every id.
  std::vector<NamedEdge> renamed;
  for (const auto& e : g.edges()) renamed.push_back({"user_" + g.id(e.u), "user_" + g.id(e.v), e.weight});
  const auto h = EndorsementGraph::from_edges(renamed);
  EXPECT_EQ(bisect(g, 0.05, 4).side, bisect(h, 0.05, 4).side);
}

TEST(Bisect, LargerGraphsStayBalanced) {
  std::mt19937_64 rng(8);
  for (std::size_t n : {65u, 201u, 1001u, 3000u}) {
    const auto g = oracle::random_connected_graph(n, 4.0 / static_cast<double>(n), rng, 3);
    for (double eps : {0.0, 0.05, 0.1}) {
      expect_valid(g, bisect(g, eps, 1), eps);
    }
  }
}

TEST(CutSize, TrianglesWithTwoBridges) {
  const auto g = EndorsementGraph::from_edges({{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}, {"d", "e", 1},
                                               {"e", "f", 1}, {"d", "f", 1}, {"a", "d", 1}, {"b", "e", 1}});
  const auto p = make_bipartition(g, {Side::X, Side::X, Side::X, Side::Y, Side::Y, Side::Y});
  EXPECT_EQ(cut_size(g, p).edges, 2u);
  EXPECT_EQ(p.cut, 2u);
}

TEST(CutSize, MatchesRecountOnRandomPartitions) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = oracle::random_graph(10, 0.4, rng, 4);
    std::uint64_t mask = rng() & 0x3ff;
    std::vector<Side> side(10);
    for (std::size_t v = 0; v < 10; ++v) side[v] = (mask >> v) & 1 ? Side::Y : Side::X;
    Bipartition p;
    p.side = side;
    std::size_t edges = 0;
    for (const auto& e : g.edges()) edges += side[e.u] != side[e.v];
    EXPECT_EQ(cut_size(g, p).edges, edges);
    EXPECT_EQ(cut_size(g, p).weight, oracle::weighted_cut(g, mask));
  }
}

TEST(CutSize, UnassignedNodeThrows) {
  const auto g = EndorsementGraph::from_edges({{"a", "b", 1}});
  Bipartition p;
  p.side = {Side::X, Side::None};
  EXPECT_THROW(cut_size(g, p), UnassignedNode);
  p.side = {Side::X};
  EXPECT_THROW(cut_size(g, p), UnassignedNode);
}

TEST(WritePartition, Format) {
  const auto g = EndorsementGraph::from_edges({{"a", "b", 1}});
  std::ostringstream out;
  write_partition(out, g, make_bipartition(g, {Side::X, Side::Y}));
  EXPECT_EQ(out.str(), "a X\nb Y\n");
}

}  // namespace
