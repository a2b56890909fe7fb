#include "cscope/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "cscope/errors.hpp"
#include "json.hpp"

namespace cscope {

using nlohmann::json;

bool InteractionRecord::has_token(std::string_view surface) const {
  return std::any_of(tokens.begin(), tokens.end(),
                     [&](const Token& t) { return t.surface == surface; });
}

TimeWindow TimeWindow::make(Timestamp start, Timestamp end, std::string label) {
  if (!(start < end)) {
    throw InvalidWindow("window '" + label + "' has start >= end");
  }
  return TimeWindow{start, end, std::move(label)};
}

namespace {

std::optional<InteractionRecord> record_from_json(const json& j) {
  if (!j.is_object()) return std::nullopt;
  InteractionRecord r;

  auto str_field = [&](const char* key, std::string& out) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) return false;
    out = it->get<std::string>();
    return !out.empty();
  };
  if (!str_field("post_id", r.post_id) || !str_field("author_id", r.author_id)) {
    return std::nullopt;
  }

  auto ts = j.find("timestamp");
  if (ts == j.end() || !ts->is_number_integer()) return std::nullopt;
  r.timestamp = ts->get<Timestamp>();

  auto toks = j.find("tokens");
  if (toks != j.end()) {
    if (!toks->is_array()) return std::nullopt;
    for (const auto& t : *toks) {
      if (!t.is_array() || t.size() != 2 || !t[0].is_string() || !t[1].is_string()) {
        return std::nullopt;
      }
      r.tokens.push_back({t[0].get<std::string>(), t[1].get<std::string>()});
    }
  }

  auto rp = j.find("repost_of");
  if (rp != j.end() && !rp->is_null()) {
    if (!rp->is_array() || rp->size() != 2 || !(*rp)[0].is_string() || !(*rp)[1].is_string()) {
      return std::nullopt;
    }
    RepostRef ref{(*rp)[0].get<std::string>(), (*rp)[1].get<std::string>()};
    if (ref.author_id.empty() || ref.post_id.empty()) return std::nullopt;
    r.repost_of = std::move(ref);
  }

  if (r.tokens.empty() && !r.repost_of) return std::nullopt;
  return r;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

// POSIX has no reentrant way to convert in an arbitrary zone, so TZ is
// swapped under a lock and restored afterwards.
std::mutex tz_mutex;

class ScopedTz {
 public:
  explicit ScopedTz(std::string_view tz) {
    if (const char* old = std::getenv("TZ")) previous_ = old;
    const std::string name(tz);
    ::setenv("TZ", name.c_str(), 1);
    ::tzset();
  }
  ~ScopedTz() {
    if (previous_) {
      ::setenv("TZ", previous_->c_str(), 1);
    } else {
      ::unsetenv("TZ");
    }
    ::tzset();
  }
  ScopedTz(const ScopedTz&) = delete;
  ScopedTz& operator=(const ScopedTz&) = delete;

 private:
  std::optional<std::string> previous_;
};

bool is_utc(std::string_view tz) { return tz == "UTC" || tz == "Etc/UTC" || tz == "Z"; }

void check_zone(std::string_view tz) {
  if (is_utc(tz)) return;
  const char* dir = std::getenv("TZDIR");
  std::filesystem::path base = dir ? dir : "/usr/share/zoneinfo";
  if (tz.empty() || tz.find("..") != std::string_view::npos ||
      !std::filesystem::is_regular_file(base / std::string(tz))) {
    throw InvalidArgument("unknown time zone '" + std::string(tz) + "'");
  }
}

Timestamp civil_to_utc(int year, int month, int day, std::string_view tz) {
  using namespace std::chrono;
  if (is_utc(tz)) {
    const sys_days d{std::chrono::year{year} / std::chrono::month{static_cast<unsigned>(month)} /
                     std::chrono::day{static_cast<unsigned>(day)}};
    return duration_cast<seconds>(d.time_since_epoch()).count();
  }
  check_zone(tz);
  std::lock_guard lock(tz_mutex);
  ScopedTz scoped(tz);
  std::tm tm{};
  tm.tm_year = year - 1900;
  tm.tm_mon = month - 1;
  tm.tm_mday = day;
  tm.tm_isdst = -1;
  return static_cast<Timestamp>(std::mktime(&tm));
}

std::pair<int, int> utc_to_year_month(Timestamp t, std::string_view tz) {
  using namespace std::chrono;
  if (is_utc(tz)) {
    const sys_days d = floor<days>(sys_seconds{seconds{t}});
    const year_month_day ymd{d};
    return {static_cast<int>(ymd.year()), static_cast<int>(static_cast<unsigned>(ymd.month()))};
  }
  check_zone(tz);
  std::lock_guard lock(tz_mutex);
  ScopedTz scoped(tz);
  const std::time_t tt = static_cast<std::time_t>(t);
  std::tm tm{};
  ::localtime_r(&tt, &tm);
  return {tm.tm_year + 1900, tm.tm_mon + 1};
}

template <typename T>
bool parse_int(std::string_view s, T& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

struct Ymd {
  int year = 0, month = 0, day = 1;
};

std::optional<Ymd> parse_date(std::string_view s) {
  Ymd d;
  if (s.size() != 7 && s.size() != 10) return std::nullopt;
  if (s[4] != '-') return std::nullopt;
  if (!parse_int(s.substr(0, 4), d.year) || !parse_int(s.substr(5, 2), d.month)) return std::nullopt;
  if (s.size() == 10) {
    if (s[7] != '-' || !parse_int(s.substr(8, 2), d.day)) return std::nullopt;
  }
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31) return std::nullopt;
  return d;
}

Timestamp parse_bound(std::string_view s, std::string_view tz) {
  Timestamp t = 0;
  if (parse_int(s, t)) return t;
  if (auto d = parse_date(s)) return civil_to_utc(d->year, d->month, d->day, tz);
  throw InvalidWindow("cannot parse window bound '" + std::string(s) + "'");
}

std::string month_label(int year, int month) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

}  // namespace

ParseResult parse_records(std::istream& in) {
  ParseResult result;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    ++result.line_count;
    std::optional<InteractionRecord> rec;
    try {
      rec = record_from_json(json::parse(line));
    } catch (const json::exception&) {
      rec.reset();
    }
    if (!rec) {
      ++result.malformed;
      result.malformed_lines.push_back(lineno);
      continue;
    }
    if (!seen.insert(rec->post_id).second) {
      throw DuplicatePostId("duplicate post_id '" + rec->post_id + "' on line " +
                            std::to_string(lineno));
    }
    result.records.push_back(std::move(*rec));
  }
  if (result.records.empty()) {
    throw EmptyInput(result.line_count, result.malformed);
  }
  return result;
}

ParseResult parse_records(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_records(in);
}

std::string serialize_record(const InteractionRecord& r) {
  json j;
  j["post_id"] = r.post_id;
  j["author_id"] = r.author_id;
  j["timestamp"] = r.timestamp;
  json toks = json::array();
  for (const auto& t : r.tokens) toks.push_back({t.surface, t.pos});
  j["tokens"] = std::move(toks);
  if (r.repost_of) j["repost_of"] = {r.repost_of->post_id, r.repost_of->author_id};
  return j.dump();
}

void write_records(std::ostream& out, std::span<const InteractionRecord> records) {
  for (const auto& r : records) out << serialize_record(r) << '\n';
}

std::vector<InteractionRecord> filter_window(std::span<const InteractionRecord> records,
                                             const TimeWindow& window,
                                             std::optional<std::string_view> query) {
  std::vector<std::size_t> in_window;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (window.contains(records[i].timestamp)) in_window.push_back(i);
  }

  std::vector<InteractionRecord> out;
  if (!query) {
    out.reserve(in_window.size());
    for (auto i : in_window) out.push_back(records[i]);
    return out;
  }

  // Reposts inherit the match of their original, through repost chains.
  std::unordered_map<std::string_view, std::vector<std::size_t>> reposts_of;
  std::vector<char> keep(records.size(), 0);
  std::vector<std::size_t> frontier;
  for (auto i : in_window) {
    const auto& r = records[i];
    if (r.repost_of) reposts_of[r.repost_of->post_id].push_back(i);
    if (r.has_token(*query)) {
      keep[i] = 1;
      frontier.push_back(i);
    }
  }
  while (!frontier.empty()) {
    const auto i = frontier.back();
    frontier.pop_back();
    auto it = reposts_of.find(records[i].post_id);
    if (it == reposts_of.end()) continue;
    for (auto child : it->second) {
      if (!keep[child]) {
        keep[child] = 1;
        frontier.push_back(child);
      }
    }
  }
  for (auto i : in_window) {
    if (keep[i]) out.push_back(records[i]);
  }
  return out;
}

TimeWindow month_window(int year, int month, std::string_view tz) {
  if (month < 1 || month > 12) throw InvalidWindow("month out of range");
  const int next_year = month == 12 ? year + 1 : year;
  const int next_month = month == 12 ? 1 : month + 1;
  return TimeWindow::make(civil_to_utc(year, month, 1, tz),
                          civil_to_utc(next_year, next_month, 1, tz), month_label(year, month));
}

TimeWindow parse_window(std::string_view spec, std::string_view tz) {
  const auto dots = spec.find("..");
  if (dots == std::string_view::npos) {
    auto d = parse_date(spec);
    if (!d || spec.size() != 7) {
      throw InvalidWindow("expected YYYY-MM or start..end, got '" + std::string(spec) + "'");
    }
    return month_window(d->year, d->month, tz);
  }
  const auto lo = spec.substr(0, dots);
  const auto hi = spec.substr(dots + 2);
  return TimeWindow::make(parse_bound(lo, tz), parse_bound(hi, tz), std::string(spec));
}

std::vector<TimeWindow> covering_months(std::span<const InteractionRecord> records,
                                        std::string_view tz) {
  if (records.empty()) return {};
  auto [lo, hi] = std::minmax_element(
      records.begin(), records.end(),
      [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
  auto [y, m] = utc_to_year_month(lo->timestamp, tz);
  const auto [y_end, m_end] = utc_to_year_month(hi->timestamp, tz);
  std::vector<TimeWindow> out;
  while (y < y_end || (y == y_end && m <= m_end)) {
    out.push_back(month_window(y, m, tz));
    if (++m > 12) {
      m = 1;
      ++y;
    }
  }
  return out;
}

}  // namespace cscope
