#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "cscope/ingest.hpp"

namespace cscope {

using NodeIndex = std::uint32_t;
using EdgeWeight = std::int64_t;

struct Neighbor {
  NodeIndex node;
  EdgeWeight weight;
};

/// Undirected edge between node indices, u < v.
struct Edge {
  NodeIndex u;
  NodeIndex v;
  EdgeWeight weight;

  bool operator==(const Edge&) const = default;
};

/// Labelled edge used to construct graphs from author ids.
struct NamedEdge {
  std::string u;
  std::string v;
  EdgeWeight weight = 1;
};

/// Undirected weighted user graph, immutable after construction.
///
/// Nodes are held in ascending byte-wise id order and addressed by their
/// position in that order; everything downstream (partitioning, tie-breaks,
/// dumps) relies on this canonical numbering. Adjacency is stored as CSR with
/// each row sorted by neighbor index.
class EndorsementGraph {
 public:
  EndorsementGraph() = default;

  /// Nodes are the union of `nodes` and the edge endpoints. Parallel edges are
  /// merged by summing weights. Throws InvalidArgument on self-loops,
  /// empty ids or non-positive weights.
  static EndorsementGraph from_edges(std::vector<NamedEdge> edges,
                                     std::vector<std::string> nodes = {});

  /// `ids` must be strictly ascending, edges must satisfy u < v < ids.size()
  /// with no duplicates.
  static EndorsementGraph from_sorted(std::vector<std::string> ids, std::vector<Edge> edges);

  std::size_t node_count() const noexcept { return ids_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  std::span<const std::string> ids() const noexcept { return ids_; }
  const std::string& id(NodeIndex v) const { return ids_[v]; }
  std::optional<NodeIndex> index_of(std::string_view id) const;

  std::span<const Neighbor> neighbors(NodeIndex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeIndex v) const { return offsets_[v + 1] - offsets_[v]; }
  EdgeWeight weighted_degree(NodeIndex v) const;

  std::span<const Edge> edges() const noexcept { return edges_; }
  std::optional<EdgeWeight> weight(NodeIndex u, NodeIndex v) const;

  /// Subgraph induced by the flagged nodes (keep.size() == node_count()).
  EndorsementGraph induced(std::span<const char> keep) const;

  bool is_connected() const;

  bool operator==(const EndorsementGraph& other) const {
    return ids_ == other.ids_ && edges_ == other.edges_;
  }

 private:
  void build_adjacency();

  std::vector<std::string> ids_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

/// Connected components as lists of node indices; each list ascending, lists
/// ordered by their smallest member.
std::vector<std::vector<NodeIndex>> connected_components(const EndorsementGraph& g);

/// Pair weight = reposts by u of v plus reposts by v of u; pairs with weight
/// >= min_rt become edges. Self-reposts are ignored, isolated authors dropped.
EndorsementGraph build_graph(std::span<const InteractionRecord> records, EdgeWeight min_rt = 2);

/// Maximal subgraph with every (unweighted) degree >= k.
EndorsementGraph k_core(const EndorsementGraph& g, std::size_t k);

/// Component with the most nodes; ties go to the component holding the
/// smallest node id.
EndorsementGraph largest_component(const EndorsementGraph& g);

struct UnderSized {
  std::size_t node_count = 0;
  bool operator==(const UnderSized&) const = default;
};

struct GraphPrepOptions {
  EdgeWeight min_rt = 2;
  std::size_t k = 2;
  std::size_t min_nodes = 800;
};

using PreparedGraph = std::variant<EndorsementGraph, UnderSized>;

/// build_graph -> k_core -> largest_component, then the size gate.
PreparedGraph prepare_conversation_graph(std::span<const InteractionRecord> records,
                                         const GraphPrepOptions& opts = {});

/// "u v w" per line, edges in canonical order.
void write_edge_list(std::ostream& out, const EndorsementGraph& g);
/// Reads "u v [w]" lines (weight defaults to 1); '#' comments allowed.
EndorsementGraph read_edge_list(std::istream& in);

}  // namespace cscope
