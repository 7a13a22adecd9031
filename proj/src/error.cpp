#include "nbldpc/error.hpp"

namespace nbldpc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnsupportedQ: return "UnsupportedQ";
    case ErrorKind::kNonPrimitivePolynomial: return "NonPrimitivePolynomial";
    case ErrorKind::kDivisionByZero: return "DivisionByZero";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kFieldMismatch: return "FieldMismatch";
    case ErrorKind::kInfeasibleDegrees: return "InfeasibleDegrees";
    case ErrorKind::kLengthMismatch: return "LengthMismatch";
    case ErrorKind::kInvalidRate: return "InvalidRate";
    case ErrorKind::kInvalidConfig: return "InvalidConfig";
    case ErrorKind::kCountersDisabled: return "CountersDisabled";
  }
  return "Unknown";
}

}  // namespace nbldpc
