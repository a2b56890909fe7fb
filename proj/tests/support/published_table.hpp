#pragma once

// Published monthly scores for six subtopics, Feb..Aug 2020. Cells without a
// score fell below the 800-node gate; node counts were not published, so the
// fixture uses 799 for those and 800 for scored cells.

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cscope/report.hpp"

namespace published_table {

inline constexpr std::array<const char*, 7> kMonths{"Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug"};

struct Row {
  const char* subtopic;
  std::array<std::optional<double>, 7> scores;
};

inline const std::vector<Row>& rows() {
  static const std::vector<Row> r{
      {"Olympic", {0.115, 0.314, 0.110, std::nullopt, std::nullopt, 0.389, std::nullopt}},
      {"Vaccine", {std::nullopt, -0.067, 0.048, 0.228, 0.518, 0.801, 0.204}},
      {"GoTo", {std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt, 0.180, -0.066}},
      {"Fever", {0.031, 0.101, -0.438, std::nullopt, std::nullopt, std::nullopt, 0.266}},
      {"Fatality", {0.327, 0.027, 0.328, -0.080, 0.210, -0.455, -0.168}},
      {"ALL", {0.168, 0.292, 0.148, 0.041, 0.189, 0.150, 0.298}},
  };
  return r;
}

using Cell = std::pair<std::string, std::string>;

/// Cells printed in bold in the published table.
inline std::set<Cell> bold_cells() {
  return {{"Olympic", "Mar"}, {"Olympic", "Jul"}, {"Vaccine", "Jun"},
          {"Vaccine", "Jul"}, {"Fatality", "Feb"}, {"Fatality", "Apr"}};
}

/// Cells printed as dashes in the published table.
inline std::set<Cell> dash_cells() {
  return {{"Olympic", "May"}, {"Olympic", "Jun"}, {"Olympic", "Aug"}, {"Vaccine", "Feb"},
          {"GoTo", "Feb"},    {"GoTo", "Mar"},    {"GoTo", "Apr"},    {"GoTo", "May"},
          {"GoTo", "Jun"},    {"Fever", "May"},   {"Fever", "Jun"},   {"Fever", "Jul"}};
}

/// Reports in window-major order, as the pipeline produces them.
inline std::vector<cscope::ControversyReport> reports() {
  std::vector<cscope::ControversyReport> out;
  for (std::size_t m = 0; m < kMonths.size(); ++m) {
    for (const auto& row : rows()) {
      cscope::ControversyReport r;
      r.subtopic = row.subtopic;
      r.window = kMonths[m];
      if (const auto s = row.scores[m]) {
        r.node_count = 800;
        r.undersized = false;
        r.rwc = cscope::RwcResult{};
        r.rwc->score = *s;
      } else {
        r.node_count = 799;
        r.undersized = true;
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

/// Splits a markdown table body into (row label, column label, cell text).
struct ParsedCell {
  std::string row;
  std::string col;
  std::string text;
};

inline std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (std::size_t i = 1; i < line.size(); ++i) {
    if (line[i] == '|') {
      const auto b = cur.find_first_not_of(' ');
      const auto e = cur.find_last_not_of(' ');
      cells.push_back(b == std::string::npos ? "" : cur.substr(b, e - b + 1));
      cur.clear();
    } else {
      cur += line[i];
    }
  }
  return cells;
}

inline std::vector<ParsedCell> parse_markdown(const std::string& md) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : md) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  std::vector<ParsedCell> out;
  if (lines.size() < 2) return out;
  const auto header = split_row(lines[0]);
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto cells = split_row(lines[i]);
    for (std::size_t c = 1; c < cells.size() && c < header.size(); ++c) {
      out.push_back({cells[0], header[c], cells[c]});
    }
  }
  return out;
}

}  // namespace published_table
