#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cscope/bipartition.hpp"
#include "cscope/graph.hpp"

namespace cscope {

struct RwcConfig {
  std::size_t k_top = 10;         // absorbing high-degree nodes per side
  double restart_prob = 0.15;     // alpha
  double solver_tol = 1e-10;
  std::size_t max_iter = 100000;
  bool weighted_walk = false;     // step proportionally to edge weight

  /// Throws InvalidArgument on out-of-range fields.
  void validate() const;
};

/// Absorption probabilities for walks started on each side and the resulting
/// Random Walk Controversy score p_xx * p_yy - p_xy * p_yx.
struct RwcResult {
  double p_xx = 0.0;
  double p_xy = 0.0;
  double p_yy = 0.0;
  double p_yx = 0.0;
  double score = 0.0;

  static RwcResult from_probabilities(double p_xx, double p_xy, double p_yy, double p_yx);
  bool operator==(const RwcResult&) const = default;
};

struct Absorption {
  double p_same = 0.0;
  double p_cross = 0.0;
  std::size_t iterations = 0;
};

/// The k_top nodes of `side` with the highest full-graph degree, ties by
/// ascending id (= ascending index). Throws SideTooSmall unless the side has
/// more than k_top nodes.
std::vector<NodeIndex> high_degree_nodes(const EndorsementGraph& g, const Bipartition& p, Side side,
                                         std::size_t k_top);

/// Exact absorption probabilities of the random walk with restart started
/// uniformly on the non-absorbing nodes of `start_side`.
///
/// Let g_s(v), g_c(v) be the probabilities that a walk from v is absorbed on
/// the same / other side before its first restart, and f(v) the probability
/// that it restarts first. They solve contracting fixed points
///   x = (1 - alpha) P x + b,
/// with b = absorbed mass for g_s / g_c and alpha for f, so Jacobi sweeps
/// converge at rate 1 - alpha. Restarts renew the walk, giving
///   p_same = <s, g_s> / (1 - <s, f>).
Absorption absorption_probabilities(const EndorsementGraph& g, const Bipartition& p,
                                    const RwcConfig& cfg, Side start_side);

RwcResult rwc_score(const EndorsementGraph& g, const Bipartition& p, const RwcConfig& cfg = {});

/// Simulates n_walks walks per side. Walks are split over a fixed number of
/// shards with substreams derived from (seed, shard), so results do not depend
/// on the thread count.
RwcResult rwc_monte_carlo(const EndorsementGraph& g, const Bipartition& p, const RwcConfig& cfg,
                          std::size_t n_walks, std::uint64_t seed);

}  // namespace cscope
