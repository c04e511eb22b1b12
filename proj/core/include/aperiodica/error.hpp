#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace aperiodica {

enum class ErrorKind {
  invalid_parameter,
  dimension_mismatch,
  insufficient_data,
  parse_error,
  not_found,
  not_repetitive,
  internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace aperiodica
