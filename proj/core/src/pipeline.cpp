#include "cscope/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "cscope/bipartition.hpp"
#include "cscope/errors.hpp"
#include "json.hpp"

namespace cscope {

namespace {

using nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

std::string slug(std::string_view s) {
  std::string out;
  for (unsigned char c : s) {
    out += (c == '/' || c == '\\' || std::isspace(c) || c == ':') ? '_' : static_cast<char>(c);
  }
  return out;
}

struct Cell {
  std::size_t window;
  std::string subtopic;
  bool unfiltered = false;
};

ControversyReport compute_cell(const PipelineConfig& cfg, const PipelineInputs& inputs,
                               const TimeWindow& window,
                               const std::vector<InteractionRecord>& window_records,
                               const Cell& cell) {
  ControversyReport r;
  r.subtopic = cell.subtopic;
  r.window = window.label;
  try {
    const auto filtered = cell.unfiltered
                              ? window_records
                              : filter_window(window_records, window, std::string_view(cell.subtopic));
    r.record_count = filtered.size();
    try {
      r.sentiment = aggregate_sentiment(filtered, inputs.lexicon);
    } catch (const AllUnmatched&) {
      r.sentiment.reset();
    }

    auto prepared = prepare_conversation_graph(filtered, cfg.graph);
    if (const auto* under = std::get_if<UnderSized>(&prepared)) {
      r.node_count = under->node_count;
      r.undersized = true;
      return r;
    }
    const auto& g = std::get<EndorsementGraph>(prepared);
    r.node_count = g.node_count();
    r.undersized = false;

    const auto partition = bisect(g, cfg.balance_eps, cfg.seed);
    r.rwc = rwc_score(g, partition, cfg.rwc);
    if (cfg.mc_check) {
      const auto mc = rwc_monte_carlo(g, partition, cfg.rwc, cfg.mc_walks, cfg.seed);
      r.rwc_monte_carlo = mc.score;
      if (std::abs(mc.score - r.rwc->score) > cfg.mc_tolerance) {
        r.error = "monte carlo score " + format_double(mc.score) + " disagrees with solver";
      }
    }
    if (!cfg.graph_dump_dir.empty()) {
      const auto stem = cfg.graph_dump_dir / (slug(window.label) + "_" + slug(cell.subtopic));
      std::ostringstream edges, parts;
      write_edge_list(edges, g);
      write_partition(parts, g, partition);
      write_file_atomic(stem.string() + ".edges", edges.str());
      write_file_atomic(stem.string() + ".part", parts.str());
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

}  // namespace

void PipelineConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (top_n < 1) fail("top_n must be positive");
  if (graph.min_rt < 1) fail("min_rt must be positive");
  if (graph.k < 1) fail("k_core must be positive");
  if (!(balance_eps >= 0.0 && balance_eps <= 0.1)) fail("balance_eps must lie in [0, 0.1]");
  if (mc_check && mc_walks < 1) fail("mc_walks must be positive");
  if (!std::isfinite(thresholds.score) || !std::isfinite(thresholds.sentiment)) fail("thresholds must be finite");
  if (noun_tags.empty()) fail("noun_tags must not be empty");
  try {
    rwc.validate();
  } catch (const InvalidArgument& e) {
    fail(e.what());
  }
}

PipelineConfig config_from_json(std::string_view json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid config JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  PipelineConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "input") cfg.input = resolve(base_dir, value.get<std::string>());
      else if (key == "tz") cfg.timezone = value.get<std::string>();
      else if (key == "windows") cfg.windows = value.get<std::vector<std::string>>();
      else if (key == "top_n") cfg.top_n = value.get<std::size_t>();
      else if (key == "stopwords" || key == "standard_stopwords") {
        auto& dest = key == "stopwords" ? cfg.stopword_files : cfg.standard_stopword_files;
        for (const auto& p : value.get<std::vector<std::string>>()) dest.push_back(resolve(base_dir, p));
      } else if (key == "noun_tags") cfg.noun_tags = value.get<std::vector<std::string>>();
      else if (key == "count_mode") cfg.count_mode = parse_count_mode(value.get<std::string>());
      else if (key == "phase1_scope") {
        const auto scope = value.get<std::string>();
        if (scope != "window" && scope != "global") throw ConfigError("phase1_scope must be window or global");
        cfg.global_phase1 = scope == "global";
      } else if (key == "queries") cfg.queries = value.get<std::vector<std::string>>();
      else if (key == "include_all") cfg.include_all = value.get<bool>();
      else if (key == "min_rt") cfg.graph.min_rt = value.get<EdgeWeight>();
      else if (key == "k_core") cfg.graph.k = value.get<std::size_t>();
      else if (key == "min_nodes") cfg.graph.min_nodes = value.get<std::size_t>();
      else if (key == "balance_eps") cfg.balance_eps = value.get<double>();
      else if (key == "k_top") cfg.rwc.k_top = value.get<std::size_t>();
      else if (key == "restart") cfg.rwc.restart_prob = value.get<double>();
      else if (key == "solver_tol") cfg.rwc.solver_tol = value.get<double>();
      else if (key == "max_iter") cfg.rwc.max_iter = value.get<std::size_t>();
      else if (key == "weighted_walk") cfg.rwc.weighted_walk = value.get<bool>();
      else if (key == "mc_walks") cfg.mc_walks = value.get<std::size_t>();
      else if (key == "mc_check") cfg.mc_check = value.get<bool>();
      else if (key == "lexicon") cfg.lexicon = resolve(base_dir, value.get<std::string>());
      else if (key == "score_thresh") cfg.thresholds.score = value.get<double>();
      else if (key == "size_thresh") cfg.thresholds.size = value.get<std::size_t>();
      else if (key == "senti_thresh") cfg.thresholds.sentiment = value.get<double>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "workers") cfg.workers = value.get<std::size_t>();
      else if (key == "output") cfg.output = resolve(base_dir, value.get<std::string>());
      else if (key == "format") cfg.format = parse_report_format(value.get<std::string>());
      else if (key == "graph_dump_dir") cfg.graph_dump_dir = resolve(base_dir, value.get<std::string>());
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str(), path.parent_path());
}

PipelineInputs load_inputs(const PipelineConfig& cfg) {
  PipelineInputs in;
  if (cfg.input.empty()) throw ConfigError("no input file configured");
  std::ifstream file(cfg.input);
  if (!file) throw ConfigError("cannot open input " + cfg.input.string());
  try {
    in.records = parse_records(file).records;
  } catch (const EmptyInput& e) {
    if (e.line_count() > 0) throw ConfigError(std::string(e.what()) + " in " + cfg.input.string());
  } catch (const DuplicatePostId& e) {
    throw ConfigError(e.what());
  }

  for (const auto& p : cfg.stopword_files) in.stopwords.custom.merge(load_word_list(p));
  for (const auto& p : cfg.standard_stopword_files) in.stopwords.standard.merge(load_word_list(p));
  in.stopwords.noun_pos_tags = WordSet(cfg.noun_tags.begin(), cfg.noun_tags.end());
  in.stopwords.validate();
  if (!cfg.lexicon.empty()) in.lexicon = PolarityLexicon::load(cfg.lexicon);
  return in;
}

std::vector<ControversyReport> run_pipeline(const PipelineConfig& cfg, const PipelineInputs& inputs) {
  cfg.validate();
  const auto& records = inputs.records;
  if (records.empty()) return {};

  std::vector<TimeWindow> windows;
  if (cfg.windows.empty()) {
    windows = covering_months(records, cfg.timezone);
  } else {
    for (const auto& w : cfg.windows) windows.push_back(parse_window(w, cfg.timezone));
  }

  std::vector<std::string> global_top;
  if (cfg.queries.empty() && cfg.global_phase1) {
    global_top = top_n_subtopics(extract_candidate_tokens(records, inputs.stopwords, cfg.count_mode), cfg.top_n);
  }

  std::vector<std::vector<InteractionRecord>> window_records;
  std::vector<Cell> cells;
  for (std::size_t wi = 0; wi < windows.size(); ++wi) {
    window_records.push_back(filter_window(records, windows[wi]));
    std::vector<std::string> subtopics;
    if (!cfg.queries.empty()) {
      std::set<std::string> seen;
      for (const auto& q : cfg.queries) {
        if (seen.insert(q).second) subtopics.push_back(q);
      }
    } else if (cfg.global_phase1) {
      subtopics = global_top;
    } else {
      subtopics = top_n_subtopics(
          extract_candidate_tokens(window_records.back(), inputs.stopwords, cfg.count_mode), cfg.top_n);
    }
    for (auto& s : subtopics) cells.push_back({wi, std::move(s), false});
    if (cfg.include_all) cells.push_back({wi, std::string(kAllSubtopics), true});
  }

  if (!cfg.graph_dump_dir.empty()) std::filesystem::create_directories(cfg.graph_dump_dir);

  std::vector<ControversyReport> reports(cells.size());
  auto run = [&](std::size_t i) {
    const auto& c = cells[i];
    reports[i] = compute_cell(cfg, inputs, windows[c.window], window_records[c.window], c);
  };

  const auto hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const auto threads = std::min(cfg.workers ? cfg.workers : hw, std::max<std::size_t>(cells.size(), 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (auto i = next++; i < cells.size(); i = next++) run(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  return reports;
}

std::vector<ControversyReport> run_pipeline(const PipelineConfig& cfg) {
  cfg.validate();
  return run_pipeline(cfg, load_inputs(cfg));
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw ConfigError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace cscope
