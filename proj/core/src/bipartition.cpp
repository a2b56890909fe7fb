#include "cscope/bipartition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>

#include "cscope/errors.hpp"
#include "cscope/rng.hpp"

namespace cscope {

std::string_view to_string(Side s) {
  switch (s) {
    case Side::X: return "X";
    case Side::Y: return "Y";
    case Side::None: break;
  }
  return "-";
}

std::size_t Bipartition::count(Side s) const {
  return static_cast<std::size_t>(std::count(side.begin(), side.end(), s));
}

std::vector<NodeIndex> Bipartition::members(Side s) const {
  std::vector<NodeIndex> out;
  for (std::size_t v = 0; v < side.size(); ++v) {
    if (side[v] == s) out.push_back(static_cast<NodeIndex>(v));
  }
  return out;
}

std::size_t max_side_size(std::size_t n, double eps) {
  const auto half_up = (n + 1) / 2;
  const auto tolerated = static_cast<std::size_t>(std::floor((0.5 + eps) * static_cast<double>(n)));
  return std::max(half_up, tolerated);
}

CutSize cut_size(const EndorsementGraph& g, const Bipartition& p) {
  if (p.side.size() != g.node_count()) {
    throw UnassignedNode("partition covers " + std::to_string(p.side.size()) + " of " +
                         std::to_string(g.node_count()) + " nodes");
  }
  for (std::size_t v = 0; v < p.side.size(); ++v) {
    if (p.side[v] == Side::None) throw UnassignedNode("node '" + g.id(static_cast<NodeIndex>(v)) + "' has no side");
  }
  CutSize c;
  for (const auto& e : g.edges()) {
    if (p.side[e.u] != p.side[e.v]) {
      ++c.edges;
      c.weight += e.weight;
    }
  }
  return c;
}

Bipartition make_bipartition(const EndorsementGraph& g, std::vector<Side> side) {
  Bipartition p;
  p.side = std::move(side);
  const auto c = cut_size(g, p);
  p.cut = c.edges;
  p.weighted_cut = c.weight;
  const auto nx = p.count(Side::X);
  const auto n = p.side.size();
  p.balance = n == 0 ? 0.0 : static_cast<double>(std::max(nx, n - nx)) / static_cast<double>(n);
  return p;
}

namespace {

using Weight = std::int64_t;
using Vertex = std::uint32_t;

/// CSR graph with vertex weights, one per multilevel hierarchy level.
struct WorkGraph {
  std::vector<Weight> vwgt;
  std::vector<std::size_t> xadj{0};
  std::vector<Vertex> adj;
  std::vector<Weight> ewgt;
  Weight total = 0;

  std::size_t size() const { return vwgt.size(); }
};

WorkGraph from_endorsement(const EndorsementGraph& g) {
  WorkGraph w;
  const auto n = g.node_count();
  w.vwgt.assign(n, 1);
  w.total = static_cast<Weight>(n);
  w.xadj.resize(n + 1);
  for (NodeIndex v = 0; v < n; ++v) {
    for (const auto& nb : g.neighbors(v)) {
      w.adj.push_back(nb.node);
      w.ewgt.push_back(nb.weight);
    }
    w.xadj[v + 1] = w.adj.size();
  }
  return w;
}

struct Level {
  WorkGraph graph;
  std::vector<Vertex> cmap;  // fine vertex -> coarse vertex of the next level
};

constexpr Vertex kUnmatched = std::numeric_limits<Vertex>::max();

/// One round of heavy-edge matching and contraction.
WorkGraph coarsen(const WorkGraph& g, Weight max_vwgt, Rng& rng, std::vector<Vertex>& cmap) {
  const auto n = g.size();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  rng.shuffle(order.begin(), order.end());

  std::vector<Vertex> match(n, kUnmatched);
  for (const auto v : order) {
    if (match[v] != kUnmatched) continue;
    Vertex best = v;
    Weight best_w = -1;
    for (auto i = g.xadj[v]; i < g.xadj[v + 1]; ++i) {
      const auto u = g.adj[i];
      if (match[u] != kUnmatched || g.vwgt[v] + g.vwgt[u] > max_vwgt) continue;
      if (g.ewgt[i] > best_w) {
        best = u;
        best_w = g.ewgt[i];
      }
    }
    match[v] = best;
    match[best] = v;
  }

  cmap.assign(n, kUnmatched);
  Vertex cn = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (cmap[v] != kUnmatched) continue;
    cmap[v] = cn;
    cmap[match[v]] = cn;
    ++cn;
  }

  WorkGraph c;
  c.vwgt.assign(cn, 0);
  c.total = g.total;
  c.xadj.assign(cn + 1, 0);
  std::vector<std::vector<Vertex>> members(cn);
  for (Vertex v = 0; v < n; ++v) {
    c.vwgt[cmap[v]] += g.vwgt[v];
    members[cmap[v]].push_back(v);
  }

  std::vector<std::ptrdiff_t> slot(cn, -1);
  std::vector<std::pair<Vertex, Weight>> row;
  for (Vertex cv = 0; cv < cn; ++cv) {
    row.clear();
    for (const auto v : members[cv]) {
      for (auto i = g.xadj[v]; i < g.xadj[v + 1]; ++i) {
        const auto cu = cmap[g.adj[i]];
        if (cu == cv) continue;
        if (slot[cu] < 0) {
          slot[cu] = static_cast<std::ptrdiff_t>(row.size());
          row.emplace_back(cu, 0);
        }
        row[static_cast<std::size_t>(slot[cu])].second += g.ewgt[i];
      }
    }
    std::sort(row.begin(), row.end());
    for (const auto& [cu, w] : row) {
      c.adj.push_back(cu);
      c.ewgt.push_back(w);
      slot[cu] = -1;
    }
    c.xadj[cv + 1] = c.adj.size();
  }
  return c;
}

/// Max-gain priority queue over vertices; ties go to the lower index.
class GainQueue {
 public:
  explicit GainQueue(std::size_t n) : key_(n, 0), present_(n, 0) {}

  void clear() {
    for (const auto& [neg_gain, v] : set_) present_[v] = 0;
    set_.clear();
  }
  bool empty() const { return set_.empty(); }
  bool contains(Vertex v) const { return present_[v] != 0; }
  Weight top_gain() const { return -set_.begin()->first; }
  Weight key(Vertex v) const { return key_[v]; }

  void insert(Vertex v, Weight gain) {
    key_[v] = gain;
    present_[v] = 1;
    set_.emplace(-gain, v);
  }
  void update(Vertex v, Weight gain) {
    set_.erase({-key_[v], v});
    insert(v, gain);
  }
  void erase(Vertex v) {
    set_.erase({-key_[v], v});
    present_[v] = 0;
  }
  Vertex pop() {
    const auto v = set_.begin()->second;
    set_.erase(set_.begin());
    present_[v] = 0;
    return v;
  }

 private:
  std::set<std::pair<Weight, Vertex>> set_;
  std::vector<Weight> key_;
  std::vector<char> present_;
};

/// Two-way partition state with incremental internal/external degrees.
class TwoWayState {
 public:
  TwoWayState(const WorkGraph& g, std::vector<std::uint8_t> part) : g_(g), part_(std::move(part)) {
    recompute();
  }

  void recompute() {
    const auto n = g_.size();
    internal_.assign(n, 0);
    external_.assign(n, 0);
    pwgt_[0] = pwgt_[1] = 0;
    cut_ = 0;
    for (Vertex v = 0; v < n; ++v) {
      pwgt_[part_[v]] += g_.vwgt[v];
      for (auto i = g_.xadj[v]; i < g_.xadj[v + 1]; ++i) {
        if (part_[g_.adj[i]] == part_[v]) {
          internal_[v] += g_.ewgt[i];
        } else {
          external_[v] += g_.ewgt[i];
        }
      }
      cut_ += external_[v];
    }
    cut_ /= 2;
  }

  Weight gain(Vertex v) const { return external_[v] - internal_[v]; }
  Weight cut() const { return cut_; }
  Weight pwgt(int side) const { return pwgt_[side]; }
  std::uint8_t part(Vertex v) const { return part_[v]; }
  bool boundary(Vertex v) const { return external_[v] > 0; }
  const std::vector<std::uint8_t>& parts() const { return part_; }
  Weight imbalance() const { return pwgt_[0] > pwgt_[1] ? pwgt_[0] - pwgt_[1] : pwgt_[1] - pwgt_[0]; }

  /// Moves v across; `touched` receives each neighbor whose gain changed.
  template <typename Fn>
  void move(Vertex v, Fn&& touched) {
    const auto from = part_[v];
    const auto to = static_cast<std::uint8_t>(1 - from);
    cut_ -= gain(v);
    std::swap(internal_[v], external_[v]);
    pwgt_[from] -= g_.vwgt[v];
    pwgt_[to] += g_.vwgt[v];
    part_[v] = to;
    for (auto i = g_.xadj[v]; i < g_.xadj[v + 1]; ++i) {
      const auto u = g_.adj[i];
      const auto w = g_.ewgt[i];
      if (part_[u] == to) {
        internal_[u] += w;
        external_[u] -= w;
      } else {
        internal_[u] -= w;
        external_[u] += w;
      }
      touched(u);
    }
  }

 private:
  const WorkGraph& g_;
  std::vector<std::uint8_t> part_;
  std::vector<Weight> internal_;
  std::vector<Weight> external_;
  Weight pwgt_[2] = {0, 0};
  Weight cut_ = 0;
};

class Refiner {
 public:
  Refiner(const WorkGraph& g, Weight max_side, std::size_t max_passes)
      : g_(g),
        max_side_(max_side),
        max_passes_(max_passes),
        queues_{GainQueue(g.size()), GainQueue(g.size())},
        locked_(g.size(), 0) {
    for (auto w : g.vwgt) max_vwgt_ = std::max(max_vwgt_, w);
  }

  bool feasible(const TwoWayState& s) const {
    return s.pwgt(0) <= max_side_ && s.pwgt(1) <= max_side_;
  }

  /// Moves best-gain vertices off the overweight side until balance holds.
  void rebalance(TwoWayState& s) {
    while (!feasible(s)) {
      const int from = s.pwgt(0) > s.pwgt(1) ? 0 : 1;
      const int to = 1 - from;
      // Prefer the best-gain vertex that does not overshoot the other side.
      Vertex best = kUnmatched;
      Weight best_gain = std::numeric_limits<Weight>::min();
      bool best_fits = false;
      for (Vertex v = 0; v < g_.size(); ++v) {
        if (s.part(v) != from) continue;
        const bool fits = s.pwgt(to) + g_.vwgt[v] <= max_side_;
        const Weight gain = s.gain(v);
        if (std::tie(fits, gain) > std::tie(best_fits, best_gain) || best == kUnmatched) {
          best = v;
          best_gain = s.gain(v);
          best_fits = fits;
        }
      }
      if (best == kUnmatched || (!best_fits && g_.vwgt[best] >= s.pwgt(from) - s.pwgt(to))) break;
      s.move(best, [](Vertex) {});
    }
  }

  void refine(TwoWayState& s) {
    for (std::size_t pass = 0; pass < max_passes_; ++pass) {
      if (!fm_pass(s)) break;
    }
  }

 private:
  /// One Fiduccia-Mattheyses pass with rollback to the best feasible prefix.
  /// Returns whether the pass improved the state.
  bool fm_pass(TwoWayState& s) {
    const auto n = g_.size();
    queues_[0].clear();
    queues_[1].clear();
    std::fill(locked_.begin(), locked_.end(), 0);
    const bool all_vertices = n <= 64;
    for (Vertex v = 0; v < n; ++v) {
      if (all_vertices || s.boundary(v)) queues_[s.part(v)].insert(v, s.gain(v));
    }

    std::vector<Vertex> moves;
    bool best_feasible = feasible(s);
    Weight best_cut = s.cut();
    Weight best_imbalance = s.imbalance();
    std::size_t best_len = 0;
    std::size_t since_best = 0;
    const std::size_t patience = std::clamp<std::size_t>(n / 50, 25, 250);

    auto on_touch = [&](Vertex u) {
      if (locked_[u]) return;
      auto& q = queues_[s.part(u)];
      if (q.contains(u)) {
        q.update(u, s.gain(u));
      } else if (s.boundary(u)) {
        q.insert(u, s.gain(u));
      }
    };

    while (true) {
      int from;
      if (s.pwgt(0) != s.pwgt(1)) {
        from = s.pwgt(0) > s.pwgt(1) ? 0 : 1;
      } else if (queues_[0].empty() || queues_[1].empty()) {
        from = queues_[0].empty() ? 1 : 0;
      } else {
        from = queues_[0].top_gain() >= queues_[1].top_gain() ? 0 : 1;
      }
      if (queues_[from].empty()) break;
      const auto v = queues_[from].pop();
      if (s.pwgt(1 - from) + g_.vwgt[v] > max_side_ + max_vwgt_) break;

      locked_[v] = 1;
      s.move(v, on_touch);
      moves.push_back(v);

      const bool ok = feasible(s);
      const bool better = ok && (!best_feasible || s.cut() < best_cut ||
                                 (s.cut() == best_cut && s.imbalance() < best_imbalance));
      if (better) {
        best_feasible = true;
        best_cut = s.cut();
        best_imbalance = s.imbalance();
        best_len = moves.size();
        since_best = 0;
      } else if (++since_best > patience) {
        break;
      }
    }

    while (moves.size() > best_len) {
      s.move(moves.back(), [](Vertex) {});
      moves.pop_back();
    }
    return best_len > 0;
  }

  const WorkGraph& g_;
  Weight max_side_;
  std::size_t max_passes_;
  Weight max_vwgt_ = 1;
  GainQueue queues_[2];
  std::vector<char> locked_;
};

/// Greedy graph growing from `seed`: side 0 absorbs the frontier vertex with
/// the best cut gain until it holds half the weight.
std::vector<std::uint8_t> grow_bisection(const WorkGraph& g, Vertex seed, Weight max_side, Rng& rng) {
  const auto n = g.size();
  std::vector<std::uint8_t> part(n, 1);
  std::vector<Weight> to_grown(n, 0);
  std::vector<Weight> wdeg(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    for (auto i = g.xadj[v]; i < g.xadj[v + 1]; ++i) wdeg[v] += g.ewgt[i];
  }
  GainQueue frontier(n);
  Weight grown = 0;
  const Weight target = g.total / 2;
  std::size_t remaining = n;

  auto absorb = [&](Vertex v) {
    part[v] = 0;
    grown += g.vwgt[v];
    --remaining;
    for (auto i = g.xadj[v]; i < g.xadj[v + 1]; ++i) {
      const auto u = g.adj[i];
      if (part[u] == 0) continue;
      to_grown[u] += g.ewgt[i];
      // weight towards side 0 minus weight towards side 1
      const Weight gain = 2 * to_grown[u] - wdeg[u];
      if (frontier.contains(u)) {
        frontier.update(u, gain);
      } else {
        frontier.insert(u, gain);
      }
    }
  };

  absorb(seed);
  while (grown < target && remaining > 1) {
    Vertex next = kUnmatched;
    std::vector<Vertex> skipped;
    while (!frontier.empty()) {
      const auto v = frontier.pop();
      if (grown + g.vwgt[v] <= max_side) {
        next = v;
        break;
      }
      skipped.push_back(v);
    }
    for (auto v : skipped) frontier.insert(v, frontier.key(v));
    if (next == kUnmatched) {
      if (!skipped.empty()) break;
      // Frontier exhausted: restart growth from a random untouched vertex.
      std::vector<Vertex> rest;
      for (Vertex v = 0; v < n; ++v) {
        if (part[v] == 1) rest.push_back(v);
      }
      next = rest[rng.below(rest.size())];
      if (grown + g.vwgt[next] > max_side) break;
    }
    absorb(next);
  }
  return part;
}

}  // namespace

Bipartition bisect(const EndorsementGraph& g, const BisectOptions& opts) {
  if (g.node_count() < 2) throw TooSmall("bisect needs at least two nodes");
  if (!(opts.eps >= 0.0 && opts.eps <= 0.1)) throw InvalidArgument("balance eps must lie in [0, 0.1]");
  if (!g.is_connected()) throw Disconnected("bisect requires a connected graph");

  Rng rng(opts.seed);
  const auto max_side = static_cast<Weight>(max_side_size(g.node_count(), opts.eps));
  const auto coarsen_to = std::max<std::size_t>(opts.coarsen_to, 2);
  const Weight max_vwgt =
      std::max<Weight>(1, static_cast<Weight>(1.5 * static_cast<double>(g.node_count()) /
                                              static_cast<double>(coarsen_to)));

  std::vector<Level> levels;
  levels.push_back({from_endorsement(g), {}});
  while (levels.back().graph.size() > coarsen_to) {
    std::vector<Vertex> cmap;
    auto coarse = coarsen(levels.back().graph, max_vwgt, rng, cmap);
    if (coarse.size() * 20 > levels.back().graph.size() * 19) break;  // stalled
    levels.back().cmap = std::move(cmap);
    levels.push_back({std::move(coarse), {}});
  }

  // Initial bisection of the coarsest graph: keep the best of several seeds.
  const auto& coarsest = levels.back().graph;
  std::vector<Vertex> seeds(coarsest.size());
  std::iota(seeds.begin(), seeds.end(), Vertex{0});
  rng.shuffle(seeds.begin(), seeds.end());
  const auto tries = std::min(seeds.size(), std::max<std::size_t>(opts.initial_tries, 1));

  std::vector<std::uint8_t> best;
  Weight best_cut = std::numeric_limits<Weight>::max();
  Refiner coarse_refiner(coarsest, max_side, opts.max_refine_passes);
  for (std::size_t t = 0; t < tries; ++t) {
    TwoWayState state(coarsest, grow_bisection(coarsest, seeds[t], max_side, rng));
    coarse_refiner.rebalance(state);
    coarse_refiner.refine(state);
    if (coarse_refiner.feasible(state) && state.cut() < best_cut) {
      best_cut = state.cut();
      best = state.parts();
    }
  }
  if (best.empty()) {
    // Should not happen for connected graphs; fall back to index order.
    best.assign(coarsest.size(), 1);
    Weight w = 0;
    for (Vertex v = 0; v < coarsest.size() && w + coarsest.vwgt[v] <= coarsest.total / 2; ++v) {
      best[v] = 0;
      w += coarsest.vwgt[v];
    }
  }

  for (std::size_t lvl = levels.size() - 1; lvl-- > 0;) {
    const auto& fine = levels[lvl].graph;
    const auto& cmap = levels[lvl].cmap;
    std::vector<std::uint8_t> projected(fine.size());
    for (Vertex v = 0; v < fine.size(); ++v) projected[v] = best[cmap[v]];
    TwoWayState state(fine, std::move(projected));
    Refiner refiner(fine, max_side, opts.max_refine_passes);
    refiner.rebalance(state);
    refiner.refine(state);
    best = state.parts();
  }

  const bool flip = best[0] != 0;
  std::vector<Side> side(best.size());
  for (std::size_t v = 0; v < best.size(); ++v) {
    side[v] = (best[v] == 0) != flip ? Side::X : Side::Y;
  }
  return make_bipartition(g, std::move(side));
}

void write_partition(std::ostream& out, const EndorsementGraph& g, const Bipartition& p) {
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    out << g.id(v) << ' ' << to_string(p.side.at(v)) << '\n';
  }
}

}  // namespace cscope
