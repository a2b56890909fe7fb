#include "cscope/graph.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "cscope/errors.hpp"

namespace cscope {

namespace {

std::uint64_t pair_key(NodeIndex a, NodeIndex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

EndorsementGraph EndorsementGraph::from_edges(std::vector<NamedEdge> edges,
                                              std::vector<std::string> nodes) {
  for (const auto& e : edges) {
    if (e.u.empty() || e.v.empty()) throw InvalidArgument("edge with empty node id");
    if (e.u == e.v) throw InvalidArgument("self-loop on '" + e.u + "'");
    if (e.weight <= 0) throw InvalidArgument("non-positive edge weight");
    nodes.push_back(e.u);
    nodes.push_back(e.v);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (!nodes.empty() && nodes.front().empty()) throw InvalidArgument("empty node id");

  auto index = [&](const std::string& id) {
    return static_cast<NodeIndex>(std::lower_bound(nodes.begin(), nodes.end(), id) - nodes.begin());
  };
  std::map<std::pair<NodeIndex, NodeIndex>, EdgeWeight> merged;
  for (const auto& e : edges) {
    auto a = index(e.u);
    auto b = index(e.v);
    if (a > b) std::swap(a, b);
    merged[{a, b}] += e.weight;
  }
  std::vector<Edge> out;
  out.reserve(merged.size());
  for (const auto& [key, w] : merged) out.push_back({key.first, key.second, w});
  return from_sorted(std::move(nodes), std::move(out));
}

EndorsementGraph EndorsementGraph::from_sorted(std::vector<std::string> ids,
                                               std::vector<Edge> edges) {
  for (std::size_t i = 1; i < ids.size(); ++i) {
    if (!(ids[i - 1] < ids[i])) throw InvalidArgument("node ids must be strictly ascending");
  }
  for (const auto& e : edges) {
    if (!(e.u < e.v) || e.v >= ids.size()) throw InvalidArgument("edge endpoints out of order");
    if (e.weight <= 0) throw InvalidArgument("non-positive edge weight");
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i - 1].u == edges[i].u && edges[i - 1].v == edges[i].v) {
      throw InvalidArgument("duplicate edge");
    }
  }
  EndorsementGraph g;
  g.ids_ = std::move(ids);
  g.edges_ = std::move(edges);
  g.build_adjacency();
  return g;
}

void EndorsementGraph::build_adjacency() {
  const auto n = ids_.size();
  offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(offsets_[n]);
  auto fill = offsets_;
  // Edges are sorted by (u, v), so each row ends up sorted by neighbor.
  for (const auto& e : edges_) adjacency_[fill[e.u]++] = {e.v, e.weight};
  for (const auto& e : edges_) adjacency_[fill[e.v]++] = {e.u, e.weight};
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

std::optional<NodeIndex> EndorsementGraph::index_of(std::string_view id) const {
  auto it = std::lower_bound(ids_.begin(), ids_.end(), id,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == ids_.end() || *it != id) return std::nullopt;
  return static_cast<NodeIndex>(it - ids_.begin());
}

EdgeWeight EndorsementGraph::weighted_degree(NodeIndex v) const {
  EdgeWeight total = 0;
  for (const auto& nb : neighbors(v)) total += nb.weight;
  return total;
}

std::optional<EdgeWeight> EndorsementGraph::weight(NodeIndex u, NodeIndex v) const {
  const auto row = neighbors(u);
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const Neighbor& a, NodeIndex b) { return a.node < b; });
  if (it == row.end() || it->node != v) return std::nullopt;
  return it->weight;
}

EndorsementGraph EndorsementGraph::induced(std::span<const char> keep) const {
  if (keep.size() != node_count()) throw InvalidArgument("mask size does not match graph");
  std::vector<NodeIndex> remap(node_count(), 0);
  std::vector<std::string> ids;
  for (std::size_t v = 0; v < node_count(); ++v) {
    if (keep[v]) {
      remap[v] = static_cast<NodeIndex>(ids.size());
      ids.push_back(ids_[v]);
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : edges_) {
    if (keep[e.u] && keep[e.v]) edges.push_back({remap[e.u], remap[e.v], e.weight});
  }
  EndorsementGraph g;
  g.ids_ = std::move(ids);
  g.edges_ = std::move(edges);
  g.build_adjacency();
  return g;
}

bool EndorsementGraph::is_connected() const {
  return node_count() <= 1 || connected_components(*this).size() == 1;
}

std::vector<std::vector<NodeIndex>> connected_components(const EndorsementGraph& g) {
  const auto n = g.node_count();
  std::vector<char> seen(n, 0);
  std::vector<std::vector<NodeIndex>> comps;
  std::vector<NodeIndex> stack;
  for (NodeIndex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<NodeIndex> comp;
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      const auto v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (const auto& nb : g.neighbors(v)) {
        if (!seen[nb.node]) {
          seen[nb.node] = 1;
          stack.push_back(nb.node);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

EndorsementGraph build_graph(std::span<const InteractionRecord> records, EdgeWeight min_rt) {
  if (min_rt < 1) throw InvalidArgument("min_rt must be positive");
  std::unordered_map<std::string_view, NodeIndex> intern;
  std::vector<std::string_view> names;
  auto id_of = [&](std::string_view name) {
    auto [it, inserted] = intern.try_emplace(name, static_cast<NodeIndex>(names.size()));
    if (inserted) names.push_back(name);
    return it->second;
  };

  std::unordered_map<std::uint64_t, EdgeWeight> weights;
  for (const auto& r : records) {
    if (!r.repost_of || r.repost_of->author_id == r.author_id) continue;
    const auto a = id_of(r.author_id);
    const auto b = id_of(r.repost_of->author_id);
    ++weights[pair_key(a, b)];
  }

  std::vector<NamedEdge> edges;
  for (const auto& [key, w] : weights) {
    if (w < min_rt) continue;
    edges.push_back({std::string(names[key >> 32]), std::string(names[key & 0xffffffffu]), w});
  }
  return EndorsementGraph::from_edges(std::move(edges));
}

EndorsementGraph k_core(const EndorsementGraph& g, std::size_t k) {
  const auto n = g.node_count();
  std::vector<std::size_t> degree(n);
  std::vector<char> alive(n, 1);
  std::vector<NodeIndex> queue;
  for (NodeIndex v = 0; v < n; ++v) {
    degree[v] = g.degree(v);
    if (degree[v] < k) {
      alive[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const auto v = queue.back();
    queue.pop_back();
    for (const auto& nb : g.neighbors(v)) {
      if (alive[nb.node] && --degree[nb.node] < k) {
        alive[nb.node] = 0;
        queue.push_back(nb.node);
      }
    }
  }
  return g.induced(alive);
}

EndorsementGraph largest_component(const EndorsementGraph& g) {
  if (g.empty()) return g;
  const auto comps = connected_components(g);
  // Components are ordered by smallest member, so the first maximum wins ties.
  const auto best = std::max_element(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    return a.size() < b.size();
  });
  if (best->size() == g.node_count()) return g;
  std::vector<char> keep(g.node_count(), 0);
  for (auto v : *best) keep[v] = 1;
  return g.induced(keep);
}

PreparedGraph prepare_conversation_graph(std::span<const InteractionRecord> records,
                                         const GraphPrepOptions& opts) {
  auto g = largest_component(k_core(build_graph(records, opts.min_rt), opts.k));
  if (g.node_count() < opts.min_nodes) return UnderSized{g.node_count()};
  return g;
}

void write_edge_list(std::ostream& out, const EndorsementGraph& g) {
  for (const auto& e : g.edges()) {
    out << g.id(e.u) << ' ' << g.id(e.v) << ' ' << e.weight << '\n';
  }
}

EndorsementGraph read_edge_list(std::istream& in) {
  std::vector<NamedEdge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    NamedEdge e;
    if (!(fields >> e.u)) continue;
    if (!(fields >> e.v)) throw ParseError("edge list line " + std::to_string(lineno) + ": missing endpoint");
    if (!(fields >> e.weight)) e.weight = 1;
    edges.push_back(std::move(e));
  }
  return EndorsementGraph::from_edges(std::move(edges));
}

}  // namespace cscope
