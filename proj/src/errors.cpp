#include "modalent/errors.hpp"

namespace modalent {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_shape: return "invalid-shape";
    case ErrorKind::shape_mismatch: return "shape-mismatch";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::zero_vector: return "zero-vector";
    case ErrorKind::not_phase_equal: return "not-phase-equal";
    case ErrorKind::superselection_violation: return "superselection-violation";
    case ErrorKind::non_finite: return "non-finite";
    case ErrorKind::cap_exceeded: return "cap-exceeded";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::not_normalized: return "not-normalized";
    case ErrorKind::parse_error: return "parse-error";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace modalent
