#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "cscope/graph.hpp"

namespace cscope {

enum class Side : std::uint8_t { X = 0, Y = 1, None = 2 };

constexpr Side opposite(Side s) { return s == Side::X ? Side::Y : Side::X; }
std::string_view to_string(Side s);

/// Two-sided node assignment, indexed like the graph it was computed on.
struct Bipartition {
  std::vector<Side> side;
  std::size_t cut = 0;            // crossing edges
  EdgeWeight weighted_cut = 0;    // sum of crossing weights
  double balance = 0.0;           // max(|X|, |Y|) / n

  std::size_t count(Side s) const;
  std::vector<NodeIndex> members(Side s) const;
  Side side_of(NodeIndex v) const { return side.at(v); }
};

/// Largest side size allowed for n nodes under tolerance eps:
/// max(ceil(n/2), floor((0.5 + eps) n)).
std::size_t max_side_size(std::size_t n, double eps);

struct CutSize {
  std::size_t edges = 0;
  EdgeWeight weight = 0;
};

/// Throws UnassignedNode when a node has no side.
CutSize cut_size(const EndorsementGraph& g, const Bipartition& p);

/// Fills in cut and balance for a side assignment.
Bipartition make_bipartition(const EndorsementGraph& g, std::vector<Side> side);

struct BisectOptions {
  double eps = 0.05;
  std::uint64_t seed = 1;
  std::size_t coarsen_to = 64;
  std::size_t initial_tries = 8;
  std::size_t max_refine_passes = 10;
};

/// Multilevel bisection: heavy-edge matching down to at most `coarsen_to`
/// vertices, greedy graph-growing initial bisection, and boundary
/// Fiduccia-Mattheyses refinement on the way back up. Edge weights drive
/// matching and gains; balance counts nodes. Side X always holds node 0.
///
/// Throws TooSmall for fewer than two nodes and Disconnected when g is not
/// connected.
Bipartition bisect(const EndorsementGraph& g, const BisectOptions& opts = {});
inline Bipartition bisect(const EndorsementGraph& g, double eps, std::uint64_t seed) {
  BisectOptions opts;
  opts.eps = eps;
  opts.seed = seed;
  return bisect(g, opts);
}

/// "node side" per line.
void write_partition(std::ostream& out, const EndorsementGraph& g, const Bipartition& p);

}  // namespace cscope
