#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modalent {

enum class ErrorKind {
  invalid_shape,
  shape_mismatch,
  invalid_argument,
  out_of_range,
  zero_vector,
  not_phase_equal,
  superselection_violation,
  non_finite,
  cap_exceeded,
  precondition,
  not_normalized,
  parse_error,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace modalent
