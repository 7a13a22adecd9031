#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nbldpc {

enum class ErrorKind {
  kUnsupportedQ,
  kNonPrimitivePolynomial,
  kDivisionByZero,
  kParseError,
  kFieldMismatch,
  kInfeasibleDegrees,
  kLengthMismatch,
  kInvalidRate,
  kInvalidConfig,
  kCountersDisabled,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (and the CLI exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failures also record where in the input they happened (1-based).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorKind::kParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace nbldpc
