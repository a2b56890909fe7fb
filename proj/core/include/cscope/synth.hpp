#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cscope/bipartition.hpp"
#include "cscope/graph.hpp"
#include "cscope/ingest.hpp"

namespace cscope {

/// Two-block random graph with known sides.
struct PlantedSpec {
  std::size_t n_per_side = 500;
  double p_in = 0.02;
  double p_out = 0.0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct PlantedGraph {
  EndorsementGraph graph;
  Bipartition truth;                 // "x..." nodes on X, "y..." nodes on Y
  std::vector<NamedEdge> bridges;    // edges added to force connectivity
};

/// Edges carry weight 2 so they survive the default repost threshold.
/// Disconnected draws are joined by one bridge per extra component; a bridge
/// stays inside the component's own block whenever that block is already
/// reachable.
PlantedGraph planted_partition(const PlantedSpec& spec);

struct CommunitySpec {
  std::size_t authors = 100;
  std::vector<std::string> vocabulary;  // noun topic tokens carried by every topic post
  double polarity_bias = 0.0;           // in [-1, 1]; P(positive word) = (1 + bias) / 2
};

struct CorpusSpec {
  std::vector<CommunitySpec> communities;
  double cross_repost_rate = 0.02;      // topic followees drawn outside the community
  TimeWindow window{1580515200, 1583020800, "2020-02"};
  std::size_t posts_min = 4;            // original posts per author, uniform in [min, max]
  std::size_t posts_max = 8;
  std::size_t reposts_min = 20;         // reposts per author, uniform in [min, max]
  std::size_t reposts_max = 30;
  std::size_t followees = 10;           // accounts an author reposts from, per kind
  std::vector<std::string> background_vocabulary{"weather"};
  double background_share = 0.0;        // fraction of posts and reposts about background tokens
  double background_mixing = 0.0;       // P(background followee ignores communities)
  std::uint64_t seed = 1;

  void validate() const;
};

struct AuthorTotals {
  std::string author;
  std::size_t community = 0;
  std::size_t posts = 0;
  std::size_t reposts = 0;
};

struct SyntheticCorpus {
  std::vector<InteractionRecord> records;
  std::vector<AuthorTotals> totals;
};

/// Authors post their community's vocabulary (NOUN) plus a polarity word
/// (ADJ); reposts go to a fixed followee set so that endorsement pairs repeat.
/// Topic followees stay inside the community with probability
/// 1 - cross_repost_rate. Background posts carry one background token; their
/// followees are uniform over all authors with probability background_mixing.
SyntheticCorpus synth_corpus(const CorpusSpec& spec);

/// JSON spec parsing for the `synth` subcommand.
PlantedSpec planted_spec_from_json(std::string_view json_text);
CorpusSpec corpus_spec_from_json(std::string_view json_text);

}  // namespace cscope
