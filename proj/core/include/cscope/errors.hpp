#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cscope {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CSCOPE_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

// ingest
CSCOPE_DEFINE_ERROR(DuplicatePostId);
CSCOPE_DEFINE_ERROR(InvalidWindow);

// bipartition
CSCOPE_DEFINE_ERROR(TooSmall);
CSCOPE_DEFINE_ERROR(Disconnected);
CSCOPE_DEFINE_ERROR(UnassignedNode);

// controversy
CSCOPE_DEFINE_ERROR(SideTooSmall);
CSCOPE_DEFINE_ERROR(NoConvergence);
CSCOPE_DEFINE_ERROR(DegenerateStart);

// sentiment
CSCOPE_DEFINE_ERROR(AllUnmatched);

// stats
CSCOPE_DEFINE_ERROR(ZeroVariance);
CSCOPE_DEFINE_ERROR(LengthMismatch);
CSCOPE_DEFINE_ERROR(TooFew);

// pipeline / report
CSCOPE_DEFINE_ERROR(UnsupportedFormat);
CSCOPE_DEFINE_ERROR(ConfigError);
CSCOPE_DEFINE_ERROR(ParseError);
CSCOPE_DEFINE_ERROR(InvalidArgument);

#undef CSCOPE_DEFINE_ERROR

/// Raised by parse_records when no line yields a valid record.
class EmptyInput : public Error {
 public:
  EmptyInput(std::size_t line_count, std::size_t malformed)
      : Error("no valid records (" + std::to_string(line_count) + " lines, " +
              std::to_string(malformed) + " malformed)"),
        line_count_(line_count),
        malformed_(malformed) {}

  std::size_t line_count() const noexcept { return line_count_; }
  std::size_t malformed() const noexcept { return malformed_; }

 private:
  std::size_t line_count_;
  std::size_t malformed_;
};

}  // namespace cscope
