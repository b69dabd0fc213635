// Internal helpers for the line-oriented text formats: comment/whitespace
// handling with line numbers for ParseError, strict full-token numeric
// parsing, and shortest round-trip double formatting.
#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "mwsrpdt/errors.hpp"

namespace mwsrpdt::detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) {
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      if (auto pos = raw.find('#'); pos != std::string::npos) raw.erase(pos);
      std::istringstream tokens(raw);
      std::vector<std::string> fields;
      std::string tok;
      while (tokens >> tok) fields.push_back(tok);
      if (!fields.empty()) lines_.push_back({number, std::move(fields)});
      last_line_ = number;
    }
  }

  const std::vector<std::string>& next(const std::string& expected) {
    if (cursor_ >= lines_.size())
      throw ParseError(last_line_ + 1, "unexpected end of file; expected " + expected);
    line_ = lines_[cursor_].number;
    return lines_[cursor_++].fields;
  }

  bool peek_keyword(const std::string& keyword) const {
    return cursor_ < lines_.size() && lines_[cursor_].fields[0] == keyword;
  }

  bool exhausted() const { return cursor_ >= lines_.size(); }

  // Line number of the most recently returned line.
  int line() const { return line_; }

 private:
  struct Line {
    int number;
    std::vector<std::string> fields;
  };
  std::vector<Line> lines_;
  std::size_t cursor_ = 0;
  int line_ = 0;
  int last_line_ = 0;
};

inline long long parse_int(const LineReader& r, const std::string& tok,
                           const std::string& what) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(r.line(), "invalid " + what + ": '" + tok + "'");
  return value;
}

inline std::uint64_t parse_u64(const LineReader& r, const std::string& tok,
                               const std::string& what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(r.line(), "invalid " + what + ": '" + tok + "'");
  return value;
}

inline double parse_double(const LineReader& r, const std::string& tok,
                           const std::string& what) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(value))
    throw ParseError(r.line(), "invalid " + what + ": '" + tok + "'");
  return value;
}

// Nonnegative decimal with at most 6 fractional digits.
inline double parse_hours(const LineReader& r, const std::string& tok,
                          const std::string& what) {
  if (auto dot = tok.find('.'); dot != std::string::npos && tok.size() - dot - 1 > 6)
    throw ParseError(r.line(), what + " '" + tok + "' has more than 6 decimal places");
  const double value = parse_double(r, tok, what);
  if (!(value >= 0.0)) throw ParseError(r.line(), what + " must be nonnegative");
  return value;
}

inline void expect_fields(const LineReader& r, const std::vector<std::string>& fields,
                          std::size_t count, const std::string& what) {
  if (fields.size() != count) throw ParseError(r.line(), "expected " + what);
}

// Shortest decimal string that parses back to exactly `value`.
inline std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace mwsrpdt::detail
