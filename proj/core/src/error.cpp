#include "aperiodica/error.hpp"

namespace aperiodica {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::not_found: return "not-found";
    case ErrorKind::not_repetitive: return "not-repetitive-at-this-scale";
    case ErrorKind::internal: return "internal-error";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace aperiodica
