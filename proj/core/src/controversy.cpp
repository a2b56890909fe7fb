#include "cscope/controversy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "cscope/errors.hpp"
#include "cscope/rng.hpp"

namespace cscope {

void RwcConfig::validate() const {
  if (k_top < 1) throw InvalidArgument("k_top must be at least 1");
  if (!(restart_prob > 0.0 && restart_prob < 1.0)) throw InvalidArgument("restart probability must lie in (0, 1)");
  if (!(solver_tol > 0.0)) throw InvalidArgument("solver tolerance must be positive");
  if (max_iter < 1) throw InvalidArgument("max_iter must be positive");
}

RwcResult RwcResult::from_probabilities(double p_xx, double p_xy, double p_yy, double p_yx) {
  RwcResult r{p_xx, p_xy, p_yy, p_yx, 0.0};
  r.score = std::clamp(p_xx * p_yy - p_xy * p_yx, -1.0, 1.0);
  return r;
}

std::vector<NodeIndex> high_degree_nodes(const EndorsementGraph& g, const Bipartition& p, Side side,
                                         std::size_t k_top) {
  auto members = p.members(side);
  if (members.size() <= k_top) {
    throw SideTooSmall("side " + std::string(to_string(side)) + " has " +
                       std::to_string(members.size()) + " nodes, need more than " +
                       std::to_string(k_top));
  }
  std::stable_sort(members.begin(), members.end(),
                   [&](NodeIndex a, NodeIndex b) { return g.degree(a) > g.degree(b); });
  members.resize(k_top);
  std::sort(members.begin(), members.end());
  return members;
}

namespace {

enum : std::uint8_t { kFree = 0, kAbsorbX = 1, kAbsorbY = 2 };

struct WalkSetup {
  std::vector<std::uint8_t> state;    // per node: free or absorbing side
  std::vector<NodeIndex> starts[2];   // free nodes of X / Y
};

WalkSetup setup_walk(const EndorsementGraph& g, const Bipartition& p, const RwcConfig& cfg) {
  cfg.validate();
  if (p.side.size() != g.node_count()) throw UnassignedNode("partition does not match graph");
  if (!g.is_connected()) throw Disconnected("random walk controversy needs a connected graph");
  WalkSetup w;
  w.state.assign(g.node_count(), kFree);
  for (auto v : high_degree_nodes(g, p, Side::X, cfg.k_top)) w.state[v] = kAbsorbX;
  for (auto v : high_degree_nodes(g, p, Side::Y, cfg.k_top)) w.state[v] = kAbsorbY;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    if (w.state[v] == kFree && p.side[v] != Side::None) {
      w.starts[static_cast<int>(p.side[v])].push_back(v);
    }
  }
  return w;
}

std::uint8_t absorb_code(Side s) { return s == Side::X ? kAbsorbX : kAbsorbY; }

double step_weight(const Neighbor& nb, bool weighted) {
  return weighted ? static_cast<double>(nb.weight) : 1.0;
}

}  // namespace

Absorption absorption_probabilities(const EndorsementGraph& g, const Bipartition& p,
                                    const RwcConfig& cfg, Side start_side) {
  if (start_side == Side::None) throw InvalidArgument("start side must be X or Y");
  const auto setup = setup_walk(g, p, cfg);
  const auto& starts = setup.starts[static_cast<int>(start_side)];
  if (starts.empty()) throw DegenerateStart("every start-side node is absorbing");

  const auto n = g.node_count();
  const double alpha = cfg.restart_prob;
  const double move = 1.0 - alpha;
  const auto same = absorb_code(start_side);
  const auto cross = absorb_code(opposite(start_side));

  // Row-normalised transitions restricted to free nodes; absorbed mass is
  // folded into the constant terms.
  std::vector<NodeIndex> free_nodes;
  std::vector<std::size_t> local(n, 0);
  for (NodeIndex v = 0; v < n; ++v) {
    if (setup.state[v] == kFree) {
      local[v] = free_nodes.size();
      free_nodes.push_back(v);
    }
  }
  const auto m = free_nodes.size();
  std::vector<std::size_t> row(m + 1, 0);
  std::vector<std::size_t> col;
  std::vector<double> prob;
  std::vector<double> b_same(m, 0.0), b_cross(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto v = free_nodes[i];
    double total = 0.0;
    for (const auto& nb : g.neighbors(v)) total += step_weight(nb, cfg.weighted_walk);
    for (const auto& nb : g.neighbors(v)) {
      const double pr = move * step_weight(nb, cfg.weighted_walk) / total;
      const auto st = setup.state[nb.node];
      if (st == same) {
        b_same[i] += pr;
      } else if (st == cross) {
        b_cross[i] += pr;
      } else {
        col.push_back(local[nb.node]);
        prob.push_back(pr);
      }
    }
    row[i + 1] = col.size();
  }

  std::vector<double> gs(m, 0.0), gc(m, 0.0), f(m, 0.0);
  std::vector<double> ns(m), nc(m), nf(m);
  const double s_mass = 1.0 / static_cast<double>(starts.size());

  auto dot = [&](const std::vector<double>& x) {
    double acc = 0.0;
    for (auto v : starts) acc += x[local[v]];
    return acc * s_mass;
  };

  Absorption out;
  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    double delta = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double as = b_same[i], ac = b_cross[i], af = alpha;
      for (auto k = row[i]; k < row[i + 1]; ++k) {
        as += prob[k] * gs[col[k]];
        ac += prob[k] * gc[col[k]];
        af += prob[k] * f[col[k]];
      }
      delta = std::max({delta, std::abs(as - gs[i]), std::abs(ac - gc[i]), std::abs(af - f[i])});
      ns[i] = as;
      nc[i] = ac;
      nf[i] = af;
    }
    gs.swap(ns);
    gc.swap(nc);
    f.swap(nf);

    // Sup-norm error of the iterate is at most delta (1-alpha)/alpha; the
    // renewal ratio amplifies it by 1/(1 - <s,f>).
    const double escape = 1.0 - dot(f);
    const double bound = delta * move / alpha;
    if (escape > 0.0 && bound <= cfg.solver_tol * escape) {
      out.p_same = dot(gs) / escape;
      out.p_cross = dot(gc) / escape;
      out.iterations = it;
      return out;
    }
  }
  throw NoConvergence("absorbing-chain solve did not converge in " + std::to_string(cfg.max_iter) +
                      " iterations");
}

RwcResult rwc_score(const EndorsementGraph& g, const Bipartition& p, const RwcConfig& cfg) {
  const auto x = absorption_probabilities(g, p, cfg, Side::X);
  const auto y = absorption_probabilities(g, p, cfg, Side::Y);
  return RwcResult::from_probabilities(x.p_same, x.p_cross, y.p_same, y.p_cross);
}

RwcResult rwc_monte_carlo(const EndorsementGraph& g, const Bipartition& p, const RwcConfig& cfg,
                          std::size_t n_walks, std::uint64_t seed) {
  if (n_walks < 1) throw InvalidArgument("n_walks must be positive");
  const auto setup = setup_walk(g, p, cfg);
  const double alpha = cfg.restart_prob;

  // Cumulative step weights per node for weighted walks.
  std::vector<std::vector<double>> cumulative;
  if (cfg.weighted_walk) {
    cumulative.resize(g.node_count());
    for (NodeIndex v = 0; v < g.node_count(); ++v) {
      double acc = 0.0;
      for (const auto& nb : g.neighbors(v)) cumulative[v].push_back(acc += static_cast<double>(nb.weight));
    }
  }

  constexpr std::size_t kShards = 64;
  struct Tally {
    std::size_t same = 0;
    std::size_t walks = 0;
  };
  std::vector<Tally> tallies(2 * kShards);

  auto run_shard = [&](std::size_t job) {
    const int side = static_cast<int>(job / kShards);
    const auto shard = job % kShards;
    const auto& starts = setup.starts[side];
    if (starts.empty()) throw DegenerateStart("every start-side node is absorbing");
    const auto same = absorb_code(static_cast<Side>(side));
    const std::size_t walks = n_walks / kShards + (shard < n_walks % kShards ? 1 : 0);
    auto rng = Rng::substream(seed, job);
    Tally t;
    for (std::size_t w = 0; w < walks; ++w) {
      NodeIndex v = starts[rng.below(starts.size())];
      while (true) {
        if (rng.uniform() < alpha) {
          v = starts[rng.below(starts.size())];
          continue;
        }
        const auto nbs = g.neighbors(v);
        NodeIndex next;
        if (cfg.weighted_walk) {
          const auto& cum = cumulative[v];
          const double r = rng.uniform() * cum.back();
          const auto k = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), r) - cum.begin());
          next = nbs[std::min(k, nbs.size() - 1)].node;
        } else {
          next = nbs[rng.below(nbs.size())].node;
        }
        const auto st = setup.state[next];
        if (st != kFree) {
          t.same += st == same ? 1 : 0;
          break;
        }
        v = next;
      }
      ++t.walks;
    }
    tallies[job] = t;
  };

  const auto jobs = 2 * kShards;
  const auto threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, jobs);
  if (threads == 1) {
    for (std::size_t j = 0; j < jobs; ++j) run_shard(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (auto j = next++; j < jobs; j = next++) run_shard(j);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  double probs[2];
  for (int side = 0; side < 2; ++side) {
    Tally sum;
    for (std::size_t s = 0; s < kShards; ++s) {
      sum.same += tallies[side * kShards + s].same;
      sum.walks += tallies[side * kShards + s].walks;
    }
    probs[side] = static_cast<double>(sum.same) / static_cast<double>(sum.walks);
  }
  return RwcResult::from_probabilities(probs[0], 1.0 - probs[0], probs[1], 1.0 - probs[1]);
}

}  // namespace cscope
