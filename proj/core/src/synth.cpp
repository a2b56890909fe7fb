#include "cscope/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>

#include "cscope/errors.hpp"
#include "cscope/rng.hpp"
#include "json.hpp"

namespace cscope {

namespace {

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

std::string padded(char prefix, std::size_t i, std::size_t width) {
  auto digits = std::to_string(i);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

void PlantedSpec::validate() const {
  if (n_per_side < 2) throw InvalidArgument("n_per_side must be at least 2");
  if (!is_probability(p_in) || !is_probability(p_out) || p_out > p_in) {
    throw InvalidArgument("planted spec needs 0 <= p_out <= p_in <= 1");
  }
}

PlantedGraph planted_partition(const PlantedSpec& spec) {
  spec.validate();
  const auto n = spec.n_per_side;
  std::size_t width = 4;
  for (std::size_t k = n - 1; k >= 10000; k /= 10) ++width;

  // Ids sort as all x-nodes then all y-nodes, so index i < n is on X.
  std::vector<std::string> ids;
  ids.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) ids.push_back(padded('x', i, width));
  for (std::size_t i = 0; i < n; ++i) ids.push_back(padded('y', i, width));

  Rng rng(spec.seed);
  std::vector<Edge> edges;
  DisjointSets sets(2 * n);
  for (std::size_t u = 0; u < 2 * n; ++u) {
    for (std::size_t v = u + 1; v < 2 * n; ++v) {
      const bool same_block = (u < n) == (v < n);
      if (rng.bernoulli(same_block ? spec.p_in : spec.p_out)) {
        edges.push_back({static_cast<NodeIndex>(u), static_cast<NodeIndex>(v), 2});
        sets.unite(u, v);
      }
    }
  }

  // Join components to the one holding node 0, preferring an anchor in the
  // same block as the component's representative.
  std::vector<std::size_t> roots;
  for (std::size_t v = 0; v < 2 * n; ++v) {
    if (sets.find(v) == v) roots.push_back(v);
  }
  std::vector<std::vector<std::size_t>> members(2 * n);
  for (std::size_t v = 0; v < 2 * n; ++v) members[sets.find(v)].push_back(v);

  PlantedGraph out;
  std::vector<char> connected(2 * n, 0);
  for (auto v : members[sets.find(0)]) connected[v] = 1;
  for (auto root : roots) {
    if (connected[root]) continue;
    const auto& comp = members[root];
    const auto u = comp[rng.below(comp.size())];
    std::vector<std::size_t> anchors;
    for (std::size_t v = 0; v < 2 * n; ++v) {
      if (connected[v] && (v < n) == (u < n)) anchors.push_back(v);
    }
    if (anchors.empty()) {
      for (std::size_t v = 0; v < 2 * n; ++v) {
        if (connected[v]) anchors.push_back(v);
      }
    }
    const auto a = anchors[rng.below(anchors.size())];
    edges.push_back({static_cast<NodeIndex>(std::min(a, u)), static_cast<NodeIndex>(std::max(a, u)), 2});
    out.bridges.push_back({ids[std::min(a, u)], ids[std::max(a, u)], 2});
    for (auto v : comp) connected[v] = 1;
  }

  out.graph = EndorsementGraph::from_sorted(std::move(ids), std::move(edges));
  std::vector<Side> side(2 * n, Side::Y);
  std::fill(side.begin(), side.begin() + static_cast<std::ptrdiff_t>(n), Side::X);
  out.truth = make_bipartition(out.graph, std::move(side));
  return out;
}

void CorpusSpec::validate() const {
  if (communities.empty()) throw InvalidArgument("corpus spec needs at least one community");
  for (const auto& c : communities) {
    if (c.authors < 1) throw InvalidArgument("community without authors");
    if (c.vocabulary.empty()) throw InvalidArgument("community without vocabulary");
    if (!(c.polarity_bias >= -1.0 && c.polarity_bias <= 1.0)) throw InvalidArgument("polarity bias outside [-1, 1]");
  }
  if (!is_probability(cross_repost_rate) || !is_probability(background_share) ||
      !is_probability(background_mixing)) {
    throw InvalidArgument("corpus spec probabilities must lie in [0, 1]");
  }
  if (posts_min > posts_max || reposts_min > reposts_max) throw InvalidArgument("empty count range");
  if (background_share > 0.0 && background_vocabulary.empty()) {
    throw InvalidArgument("background share without background vocabulary");
  }
  if (!(window.start < window.end)) throw InvalidWindow("corpus window is empty");
}

SyntheticCorpus synth_corpus(const CorpusSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  struct Author {
    std::string id;
    std::size_t community;
    std::vector<std::size_t> posts[2];      // record indices: topic, background
    std::vector<std::size_t> followees[2];  // author indices: topic, background
  };
  std::vector<Author> authors;
  std::vector<std::vector<std::size_t>> by_community(spec.communities.size());
  for (std::size_t c = 0; c < spec.communities.size(); ++c) {
    for (std::size_t j = 0; j < spec.communities[c].authors; ++j) {
      char buf[48];
      std::snprintf(buf, sizeof buf, "c%zu_u%05zu", c, j);
      by_community[c].push_back(authors.size());
      authors.push_back(Author{buf, c, {}, {}});
    }
  }

  SyntheticCorpus out;
  std::size_t next_post = 0;
  auto post_id = [&] { return padded('p', next_post++, 8); };
  auto uniform_time = [&](Timestamp lo) {
    return lo + static_cast<Timestamp>(rng.below(static_cast<std::uint64_t>(spec.window.end - lo)));
  };
  auto polarity_token = [&](double bias) {
    return rng.bernoulli((1.0 + bias) / 2.0) ? Token{"good", "ADJ"} : Token{"bad", "ADJ"};
  };

  for (auto& a : authors) {
    const auto& community = spec.communities[a.community];
    AuthorTotals totals{a.id, a.community, rng.between(spec.posts_min, spec.posts_max), 0};
    for (std::size_t k = 0; k < totals.posts; ++k) {
      const bool background = rng.bernoulli(spec.background_share);
      InteractionRecord r;
      r.post_id = post_id();
      r.author_id = a.id;
      r.timestamp = uniform_time(spec.window.start);
      if (background) {
        const auto& vocab = spec.background_vocabulary;
        r.tokens.push_back({vocab[rng.below(vocab.size())], "NOUN"});
      } else {
        for (const auto& w : community.vocabulary) r.tokens.push_back({w, "NOUN"});
      }
      r.tokens.push_back(polarity_token(community.polarity_bias));
      r.tokens.push_back({"is", "VERB"});
      a.posts[background ? 1 : 0].push_back(out.records.size());
      out.records.push_back(std::move(r));
    }
    out.totals.push_back(std::move(totals));
  }

  auto draw_followee = [&](std::size_t self, bool mixed) -> std::size_t {
    const auto c = authors[self].community;
    if (mixed) return rng.below(authors.size());
    if (spec.communities.size() > 1 && rng.bernoulli(spec.cross_repost_rate)) {
      std::size_t other = rng.below(spec.communities.size() - 1);
      if (other >= c) ++other;
      const auto& pool = by_community[other];
      return pool[rng.below(pool.size())];
    }
    const auto& pool = by_community[c];
    return pool[rng.below(pool.size())];
  };
  for (std::size_t self = 0; self < authors.size(); ++self) {
    for (int kind = 0; kind < 2; ++kind) {
      auto& list = authors[self].followees[kind];
      for (std::size_t attempt = 0; list.size() < spec.followees && attempt < 20 * spec.followees; ++attempt) {
        const bool mixed = kind == 1 && rng.bernoulli(spec.background_mixing);
        const auto f = draw_followee(self, mixed);
        if (f == self || std::find(list.begin(), list.end(), f) != list.end()) continue;
        list.push_back(f);
      }
    }
  }

  for (std::size_t self = 0; self < authors.size(); ++self) {
    const auto wanted = rng.between(spec.reposts_min, spec.reposts_max);
    for (std::size_t k = 0; k < wanted; ++k) {
      const int kind = rng.bernoulli(spec.background_share) ? 1 : 0;
      const auto& list = authors[self].followees[kind];
      if (list.empty()) continue;
      const auto& target = authors[list[rng.below(list.size())]];
      const auto* pool = &target.posts[kind];
      if (pool->empty()) pool = &target.posts[1 - kind];
      if (pool->empty()) continue;
      const auto original_idx = (*pool)[rng.below(pool->size())];
      InteractionRecord r;
      r.post_id = post_id();
      r.author_id = authors[self].id;
      r.timestamp = uniform_time(out.records[original_idx].timestamp);
      r.repost_of = RepostRef{out.records[original_idx].post_id, target.id};
      out.records.push_back(std::move(r));
      ++out.totals[self].reposts;
    }
  }
  return out;
}

namespace {

using nlohmann::json;

template <typename T>
void read_opt(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) out = it->get<T>();
}

json parse_spec(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid spec JSON: ") + e.what());
  }
}

}  // namespace

PlantedSpec planted_spec_from_json(std::string_view json_text) {
  const auto j = parse_spec(json_text);
  PlantedSpec s;
  try {
    read_opt(j, "n_per_side", s.n_per_side);
    read_opt(j, "p_in", s.p_in);
    read_opt(j, "p_out", s.p_out);
    read_opt(j, "seed", s.seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("planted spec: ") + e.what());
  }
  s.validate();
  return s;
}

CorpusSpec corpus_spec_from_json(std::string_view json_text) {
  const auto j = parse_spec(json_text);
  CorpusSpec s;
  try {
    s.communities.clear();
    for (const auto& c : j.at("communities")) {
      CommunitySpec cs;
      read_opt(c, "authors", cs.authors);
      read_opt(c, "vocabulary", cs.vocabulary);
      read_opt(c, "polarity_bias", cs.polarity_bias);
      s.communities.push_back(std::move(cs));
    }
    read_opt(j, "cross_repost_rate", s.cross_repost_rate);
    if (auto it = j.find("window"); it != j.end()) {
      if (it->is_string()) {
        std::string tz = "UTC";
        read_opt(j, "tz", tz);
        s.window = parse_window(it->get<std::string>(), tz);
      } else {
        s.window = TimeWindow::make(it->at("start").get<Timestamp>(), it->at("end").get<Timestamp>(),
                                    it->value("label", std::string("window")));
      }
    }
    read_opt(j, "posts_min", s.posts_min);
    read_opt(j, "posts_max", s.posts_max);
    read_opt(j, "reposts_min", s.reposts_min);
    read_opt(j, "reposts_max", s.reposts_max);
    read_opt(j, "followees", s.followees);
    read_opt(j, "background_vocabulary", s.background_vocabulary);
    read_opt(j, "background_share", s.background_share);
    read_opt(j, "background_mixing", s.background_mixing);
    read_opt(j, "seed", s.seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("corpus spec: ") + e.what());
  }
  s.validate();
  return s;
}

}  // namespace cscope
