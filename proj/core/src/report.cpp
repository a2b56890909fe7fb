#include "cscope/report.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

#include "cscope/errors.hpp"
#include "json.hpp"

namespace cscope {

namespace {

constexpr std::string_view kCsvHeader =
    "subtopic,window,record_count,node_count,undersized,rwc,p_xx,p_xy,p_yy,p_yx,rwc_mc,"
    "sentiment_mean,sentiment_std,sentiment_matched,high_controversy,large,low_sentiment,error";
constexpr std::size_t kCsvColumns = 18;

std::string csv_quote(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string opt_double(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

/// RFC 4180 record splitting; returns false at end of input.
bool next_csv_record(std::string_view text, std::size_t& pos, std::vector<std::string>& fields) {
  fields.clear();
  if (pos >= text.size()) return false;
  std::string field;
  bool quoted = false;
  while (pos < text.size()) {
    const char c = text[pos++];
    if (quoted) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          field += '"';
          ++pos;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      field += c;
    }
  }
  fields.push_back(std::move(field));
  return true;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw ParseError("bad number '" + s + "'");
  return v;
}

std::size_t parse_size(const std::string& s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw ParseError("bad count '" + s + "'");
  return v;
}

std::string emit_csv(std::span<const ControversyReport> reports, const Thresholds& t) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : reports) {
    std::vector<std::string> f;
    f.push_back(csv_quote(r.subtopic));
    f.push_back(csv_quote(r.window));
    f.push_back(std::to_string(r.record_count));
    f.push_back(std::to_string(r.node_count));
    f.push_back(r.undersized ? "1" : "0");
    if (r.rwc) {
      for (double v : {r.rwc->score, r.rwc->p_xx, r.rwc->p_xy, r.rwc->p_yy, r.rwc->p_yx}) {
        f.push_back(format_double(v));
      }
    } else {
      f.insert(f.end(), 5, "");
    }
    f.push_back(opt_double(r.rwc_monte_carlo));
    if (r.sentiment) {
      f.push_back(format_double(r.sentiment->mean));
      f.push_back(format_double(r.sentiment->std));
      f.push_back(std::to_string(r.sentiment->matched_count));
    } else {
      f.insert(f.end(), 3, "");
    }
    f.push_back(r.high_controversy(t) ? "1" : "0");
    f.push_back(r.large(t) ? "1" : "0");
    f.push_back(r.low_sentiment(t) ? "1" : "0");
    f.push_back(csv_quote(r.error));
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i) out += ',';
      out += f[i];
    }
    out += '\n';
  }
  return out;
}

std::string emit_json(std::span<const ControversyReport> reports, const Thresholds& t) {
  using nlohmann::ordered_json;
  ordered_json arr = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json j;
    j["subtopic"] = r.subtopic;
    j["window"] = r.window;
    j["record_count"] = r.record_count;
    j["node_count"] = r.node_count;
    j["undersized"] = r.undersized;
    if (r.rwc) {
      j["rwc"] = r.rwc->score;
      j["p_xx"] = r.rwc->p_xx;
      j["p_xy"] = r.rwc->p_xy;
      j["p_yy"] = r.rwc->p_yy;
      j["p_yx"] = r.rwc->p_yx;
    } else {
      j["rwc"] = nullptr;
    }
    if (r.rwc_monte_carlo) j["rwc_mc"] = *r.rwc_monte_carlo;
    if (r.sentiment) {
      j["sentiment_mean"] = r.sentiment->mean;
      j["sentiment_std"] = r.sentiment->std;
      j["sentiment_matched"] = r.sentiment->matched_count;
    } else {
      j["sentiment_mean"] = nullptr;
      j["sentiment_std"] = nullptr;
      j["sentiment_matched"] = 0;
    }
    j["high_controversy"] = r.high_controversy(t);
    j["large"] = r.large(t);
    j["low_sentiment"] = r.low_sentiment(t);
    if (!r.error.empty()) j["error"] = r.error;
    arr.push_back(std::move(j));
  }
  ordered_json doc;
  doc["reports"] = std::move(arr);
  return doc.dump(2) + "\n";
}

std::string md_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

std::string emit_markdown(std::span<const ControversyReport> reports, const Thresholds& t) {
  std::vector<std::string> rows;
  std::vector<std::string> cols;
  std::map<std::pair<std::string, std::string>, const ControversyReport*> cells;
  for (const auto& r : reports) {
    if (std::find(rows.begin(), rows.end(), r.subtopic) == rows.end()) rows.push_back(r.subtopic);
    if (std::find(cols.begin(), cols.end(), r.window) == cols.end()) cols.push_back(r.window);
    cells[{r.subtopic, r.window}] = &r;
  }

  std::string out = "| Subtopic |";
  for (const auto& c : cols) out += " " + md_escape(c) + " |";
  out += "\n|---|";
  for (std::size_t i = 0; i < cols.size(); ++i) out += "---|";
  out += '\n';
  for (const auto& row : rows) {
    out += "| " + md_escape(row) + " |";
    for (const auto& col : cols) {
      auto it = cells.find({row, col});
      std::string cell = "-";
      if (it != cells.end() && it->second->rwc) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", it->second->rwc->score);
        cell = it->second->high_controversy(t) ? std::string("**") + buf + "**" : buf;
      }
      out += " " + cell + " |";
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  throw UnsupportedFormat("unsupported report format '" + std::string(name) + "'");
}

std::string emit_report(std::span<const ControversyReport> reports, ReportFormat format,
                        const Thresholds& thresholds) {
  switch (format) {
    case ReportFormat::Csv: return emit_csv(reports, thresholds);
    case ReportFormat::Json: return emit_json(reports, thresholds);
    case ReportFormat::Markdown: return emit_markdown(reports, thresholds);
  }
  throw UnsupportedFormat("unsupported report format");
}

std::vector<ControversyReport> parse_report_csv(std::string_view csv) {
  std::size_t pos = 0;
  std::vector<std::string> fields;
  if (!next_csv_record(csv, pos, fields)) throw ParseError("empty report");
  std::string header;
  for (std::size_t i = 0; i < fields.size(); ++i) header += (i ? "," : "") + fields[i];
  if (header != kCsvHeader) throw ParseError("unexpected report header");

  std::vector<ControversyReport> out;
  while (next_csv_record(csv, pos, fields)) {
    if (fields.size() == 1 && fields[0].empty()) continue;
    if (fields.size() != kCsvColumns) throw ParseError("report row has wrong column count");
    ControversyReport r;
    r.subtopic = fields[0];
    r.window = fields[1];
    r.record_count = parse_size(fields[2]);
    r.node_count = parse_size(fields[3]);
    r.undersized = fields[4] == "1";
    if (!fields[5].empty()) {
      RwcResult rwc;
      rwc.score = parse_double(fields[5]);
      rwc.p_xx = parse_double(fields[6]);
      rwc.p_xy = parse_double(fields[7]);
      rwc.p_yy = parse_double(fields[8]);
      rwc.p_yx = parse_double(fields[9]);
      r.rwc = rwc;
    }
    if (!fields[10].empty()) r.rwc_monte_carlo = parse_double(fields[10]);
    if (!fields[11].empty()) {
      r.sentiment = SentimentSummary{parse_double(fields[11]), parse_double(fields[12]),
                                     parse_size(fields[13])};
    }
    r.error = fields[17];
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace cscope
