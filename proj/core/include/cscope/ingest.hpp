#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cscope {

/// UTC epoch seconds.
using Timestamp = std::int64_t;

struct Token {
  std::string surface;
  std::string pos;

  bool operator==(const Token&) const = default;
};

struct RepostRef {
  std::string post_id;
  std::string author_id;

  bool operator==(const RepostRef&) const = default;
};

/// One post. A record with repost_of set is a repost of another author's post;
/// only such records may carry an empty token list.
struct InteractionRecord {
  std::string post_id;
  std::string author_id;
  Timestamp timestamp = 0;
  std::vector<Token> tokens;
  std::optional<RepostRef> repost_of;

  bool is_repost() const noexcept { return repost_of.has_value(); }
  bool has_token(std::string_view surface) const;

  bool operator==(const InteractionRecord&) const = default;
};

/// Half-open interval [start, end) of UTC seconds.
struct TimeWindow {
  Timestamp start = 0;
  Timestamp end = 0;
  std::string label;

  /// Throws InvalidWindow unless start < end.
  static TimeWindow make(Timestamp start, Timestamp end, std::string label);

  bool contains(Timestamp t) const noexcept { return start <= t && t < end; }
  bool operator==(const TimeWindow&) const = default;
};

struct ParseResult {
  std::vector<InteractionRecord> records;
  std::size_t line_count = 0;  // non-blank lines seen
  std::size_t malformed = 0;
  std::vector<std::size_t> malformed_lines;  // 1-based
};

/// Parses line-delimited JSON records. Malformed lines are skipped and
/// counted. Throws EmptyInput when no line yields a record and
/// DuplicatePostId when a post_id repeats.
ParseResult parse_records(std::istream& in);
ParseResult parse_records(std::string_view text);

/// One JSON object, no trailing newline. parse_records inverts it.
std::string serialize_record(const InteractionRecord& record);
void write_records(std::ostream& out, std::span<const InteractionRecord> records);

/// Keeps records inside the window. With a query, keeps records whose token
/// surfaces contain it plus (transitively) reposts of kept records. Output
/// preserves input order.
std::vector<InteractionRecord> filter_window(std::span<const InteractionRecord> records,
                                             const TimeWindow& window,
                                             std::optional<std::string_view> query = std::nullopt);

/// Calendar month [YYYY-MM-01 00:00, next month) in the named IANA zone,
/// labelled "YYYY-MM".
TimeWindow month_window(int year, int month, std::string_view tz = "UTC");

/// Parses "YYYY-MM" or "start..end", where each bound is epoch seconds,
/// "YYYY-MM-DD" or "YYYY-MM" interpreted in tz.
TimeWindow parse_window(std::string_view spec, std::string_view tz = "UTC");

/// Every calendar month (in tz) touched by the records, in order.
std::vector<TimeWindow> covering_months(std::span<const InteractionRecord> records,
                                        std::string_view tz = "UTC");

}  // namespace cscope
