// controversy-scope: batch controversy scoring over repost corpora.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cscope/bipartition.hpp"
#include "cscope/errors.hpp"
#include "cscope/pipeline.hpp"
#include "cscope/stats.hpp"
#include "cscope/synth.hpp"
#include "json.hpp"

namespace {

using namespace cscope;

struct Overrides {
  std::string config;
  std::string input;
  std::string tz;
  std::vector<std::string> windows;
  std::optional<std::size_t> top_n;
  std::vector<std::string> stopwords;
  std::vector<std::string> standard_stopwords;
  std::string noun_tags;
  std::string count_mode;
  std::string phase1_scope;
  std::optional<long long> min_rt;
  std::optional<std::size_t> k_core;
  std::optional<std::size_t> min_nodes;
  std::optional<double> balance_eps;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> k_top;
  std::optional<double> restart;
  std::optional<std::size_t> mc_walks;
  bool mc_check = false;
  bool weighted_walk = false;
  std::string lexicon;
  std::optional<double> score_thresh;
  std::optional<std::size_t> size_thresh;
  std::optional<double> senti_thresh;
  std::optional<std::size_t> workers;
  std::string format;
  std::string output;
  std::string dump_graphs;
  bool include_all = false;
  bool quiet = false;
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

void add_pipeline_flags(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
  app->add_option("--input", o.input, "JSONL interaction records");
  app->add_option("--tz", o.tz, "IANA time zone for month windows");
  app->add_option("--window", o.windows, "YYYY-MM or start..end (repeatable)");
  app->add_option("--top-n", o.top_n, "Phase-1 shortlist length");
  app->add_option("--stopwords", o.stopwords, "custom stopword files");
  app->add_option("--standard-stopwords", o.standard_stopwords, "standard stopword files");
  app->add_option("--noun-tags", o.noun_tags, "comma-separated noun POS tags");
  app->add_option("--count-mode", o.count_mode, "occurrences | documents");
  app->add_option("--phase1-scope", o.phase1_scope, "window | global");
  app->add_option("--min-rt", o.min_rt, "minimum reposts per endorsement edge");
  app->add_option("--k-core", o.k_core, "k-core order");
  app->add_option("--min-nodes", o.min_nodes, "minimum conversation graph size");
  app->add_option("--balance-eps", o.balance_eps, "bisection imbalance tolerance");
  app->add_option("--seed", o.seed, "random seed");
  app->add_option("--k-top", o.k_top, "absorbing nodes per side");
  app->add_option("--restart", o.restart, "walk restart probability");
  app->add_option("--mc-walks", o.mc_walks, "Monte Carlo walks per side");
  app->add_flag("--mc-check", o.mc_check, "cross-check the solver with Monte Carlo");
  app->add_flag("--weighted-walk", o.weighted_walk, "step proportionally to edge weight");
  app->add_option("--lexicon", o.lexicon, "surface<TAB>polarity lexicon");
  app->add_option("--score-thresh", o.score_thresh, "high controversy threshold");
  app->add_option("--size-thresh", o.size_thresh, "large graph threshold (nodes)");
  app->add_option("--senti-thresh", o.senti_thresh, "low sentiment threshold");
  app->add_option("--workers", o.workers, "worker threads (0 = all cores)");
  app->add_option("--format", o.format, "csv | json | markdown");
  app->add_option("--output", o.output, "report path (stdout if omitted)");
  app->add_option("--dump-graphs", o.dump_graphs, "directory for edge list and partition dumps");
  app->add_flag("--include-all", o.include_all, "add an unfiltered ALL row per window");
  app->add_flag("-q,--quiet", o.quiet, "skip the correlation summary");
}

PipelineConfig build_config(const Overrides& o) {
  PipelineConfig c = o.config.empty() ? PipelineConfig{} : load_config(o.config);
  if (!o.input.empty()) c.input = o.input;
  if (!o.tz.empty()) c.timezone = o.tz;
  if (!o.windows.empty()) c.windows = o.windows;
  if (o.top_n) c.top_n = *o.top_n;
  for (const auto& p : o.stopwords) c.stopword_files.emplace_back(p);
  for (const auto& p : o.standard_stopwords) c.standard_stopword_files.emplace_back(p);
  if (!o.noun_tags.empty()) c.noun_tags = split_csv(o.noun_tags);
  if (!o.count_mode.empty()) c.count_mode = parse_count_mode(o.count_mode);
  if (!o.phase1_scope.empty()) {
    if (o.phase1_scope != "window" && o.phase1_scope != "global") {
      throw ConfigError("--phase1-scope must be window or global");
    }
    c.global_phase1 = o.phase1_scope == "global";
  }
  if (o.min_rt) c.graph.min_rt = *o.min_rt;
  if (o.k_core) c.graph.k = *o.k_core;
  if (o.min_nodes) c.graph.min_nodes = *o.min_nodes;
  if (o.balance_eps) c.balance_eps = *o.balance_eps;
  if (o.seed) c.seed = *o.seed;
  if (o.k_top) c.rwc.k_top = *o.k_top;
  if (o.restart) c.rwc.restart_prob = *o.restart;
  if (o.mc_walks) c.mc_walks = *o.mc_walks;
  if (o.mc_check) c.mc_check = true;
  if (o.weighted_walk) c.rwc.weighted_walk = true;
  if (!o.lexicon.empty()) c.lexicon = o.lexicon;
  if (o.score_thresh) c.thresholds.score = *o.score_thresh;
  if (o.size_thresh) c.thresholds.size = *o.size_thresh;
  if (o.senti_thresh) c.thresholds.sentiment = *o.senti_thresh;
  if (o.workers) c.workers = *o.workers;
  if (!o.format.empty()) c.format = parse_report_format(o.format);
  if (!o.output.empty()) c.output = o.output;
  if (!o.dump_graphs.empty()) c.graph_dump_dir = o.dump_graphs;
  if (o.include_all) c.include_all = true;
  return c;
}

void print_correlation(const char* label, const std::optional<Correlation>& c) {
  if (c) {
    std::fprintf(stderr, "  %-16s r=%+.3f p=%.3g n=%zu\n", label, c->r, c->p, c->n);
  } else {
    std::fprintf(stderr, "  %-16s undefined\n", label);
  }
}

int run_batch(const PipelineConfig& cfg, bool quiet) {
  const auto reports = run_pipeline(cfg);
  const auto text = emit_report(reports, cfg.format, cfg.thresholds);
  if (cfg.output.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(cfg.output, text);
  }

  std::size_t scored = 0, failed = 0;
  for (const auto& r : reports) {
    scored += r.scored();
    failed += !r.error.empty();
  }
  if (!quiet) {
    std::fprintf(stderr, "%zu cells, %zu scored, %zu errors\n", reports.size(), scored, failed);
    const auto corr = correlate_indicators(reports);
    print_correlation("nodes", corr.node_count);
    print_correlation("sentiment mean", corr.sentiment_mean);
    print_correlation("sentiment std", corr.sentiment_std);
  }
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct SynthArgs {
  std::string spec;
  std::string output;
  std::string edges;
  std::string partition;
};

int run_synth(const SynthArgs& a) {
  const auto text = read_file(a.spec);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid spec JSON: ") + e.what());
  }
  const auto kind = j.is_object() ? j.value("kind", std::string("corpus")) : std::string();
  j.erase("kind");

  if (kind == "planted") {
    const auto planted = planted_partition(planted_spec_from_json(j.dump()));
    std::ostringstream edges;
    write_edge_list(edges, planted.graph);
    const auto dest = !a.edges.empty() ? a.edges : a.output;
    if (dest.empty()) {
      std::cout << edges.str();
    } else {
      write_file_atomic(dest, edges.str());
    }
    if (!a.partition.empty()) {
      std::ostringstream parts;
      write_partition(parts, planted.graph, planted.truth);
      write_file_atomic(a.partition, parts.str());
    }
    std::fprintf(stderr, "%zu nodes, %zu edges, %zu bridges\n", planted.graph.node_count(),
                 planted.graph.edges().size(), planted.bridges.size());
    return 0;
  }
  if (kind != "corpus") throw ConfigError("spec kind must be planted or corpus");

  const auto corpus = synth_corpus(corpus_spec_from_json(j.dump()));
  std::ostringstream records;
  write_records(records, corpus.records);
  if (a.output.empty()) {
    std::cout << records.str();
  } else {
    write_file_atomic(a.output, records.str());
  }
  if (!a.edges.empty()) {
    std::ostringstream edges;
    write_edge_list(edges, build_graph(corpus.records));
    write_file_atomic(a.edges, edges.str());
  }
  std::fprintf(stderr, "%zu authors, %zu records\n", corpus.totals.size(), corpus.records.size());
  return 0;
}

struct ScoreArgs {
  std::string edges;
  double balance_eps = 0.05;
  std::uint64_t seed = 1;
  RwcConfig rwc;
  std::optional<std::size_t> mc_walks;
  std::string partition;
};

int run_score(const ScoreArgs& a) {
  std::ifstream in(a.edges);
  if (!in) throw ConfigError("cannot open " + a.edges);
  const auto g = read_edge_list(in);
  const auto p = bisect(g, a.balance_eps, a.seed);
  const auto r = rwc_score(g, p, a.rwc);
  std::printf("nodes %zu\ncut %lld\nrwc %s\n", g.node_count(), static_cast<long long>(p.weighted_cut),
              format_double(r.score).c_str());
  if (a.mc_walks) {
    const auto mc = rwc_monte_carlo(g, p, a.rwc, *a.mc_walks, a.seed);
    std::printf("rwc_mc %s\n", format_double(mc.score).c_str());
  }
  if (!a.partition.empty()) {
    std::ostringstream parts;
    write_partition(parts, g, p);
    write_file_atomic(a.partition, parts.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controversy scoring for repost corpora"};
  app.require_subcommand(1);

  Overrides run_opts;
  auto* run = app.add_subcommand("run", "score the Phase-1 shortlist of every window");
  add_pipeline_flags(run, run_opts);

  Overrides rq1_opts;
  std::string queries;
  auto* rq1 = app.add_subcommand("rq1", "score pre-specified subtopics");
  add_pipeline_flags(rq1, rq1_opts);
  rq1->add_option("--queries", queries, "comma-separated subtopic tokens")->required();

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "generate a synthetic corpus or planted graph");
  synth->add_option("--spec", synth_args.spec, "JSON spec with kind = corpus | planted")
      ->required()
      ->check(CLI::ExistingFile);
  synth->add_option("--output", synth_args.output, "records (corpus) or edge list (planted)");
  synth->add_option("--edges", synth_args.edges, "edge list dump");
  synth->add_option("--partition", synth_args.partition, "planted sides dump");

  ScoreArgs score_args;
  auto* score = app.add_subcommand("score", "bisect and score one edge list");
  score->add_option("--edges", score_args.edges, "u v w edge list")->required()->check(CLI::ExistingFile);
  score->add_option("--balance-eps", score_args.balance_eps);
  score->add_option("--seed", score_args.seed);
  score->add_option("--k-top", score_args.rwc.k_top);
  score->add_option("--restart", score_args.rwc.restart_prob);
  score->add_flag("--weighted-walk", score_args.rwc.weighted_walk);
  score->add_option("--mc-walks", score_args.mc_walks);
  score->add_option("--partition", score_args.partition, "write the bisection");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_batch(build_config(run_opts), run_opts.quiet);
    if (*rq1) {
      auto cfg = build_config(rq1_opts);
      cfg.queries = split_csv(queries);
      if (cfg.queries.empty()) throw ConfigError("--queries is empty");
      return run_batch(cfg, rq1_opts.quiet);
    }
    if (*synth) return run_synth(synth_args);
    if (*score) return run_score(score_args);
  } catch (const cscope::Error& e) {
    std::fprintf(stderr, "controversy-scope: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "controversy-scope: %s\n", e.what());
    return 1;
  }
  return 0;
}
