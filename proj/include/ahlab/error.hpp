#pragma once

#include <stdexcept>
#include <string>

namespace ah {

enum class ErrorKind {
  usage,                 // caller violated a precondition
  parse,                 // expression or config text could not be parsed
  validation,            // manifold/metric failed an invariant check
  degenerate_frame,      // frame matrix singular or badly conditioned
  metric_degeneracy,     // Gram matrix singular
  positivity,            // assembled metric not positive definite
  uniqueness_violation,  // axioms system rank-deficient or mismatched
  internal_consistency,  // a verified postcondition failed (implementation bug)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::parse: return "parse";
    case ErrorKind::validation: return "validation";
    case ErrorKind::degenerate_frame: return "degenerate-frame";
    case ErrorKind::metric_degeneracy: return "metric-degeneracy";
    case ErrorKind::positivity: return "positivity";
    case ErrorKind::uniqueness_violation: return "uniqueness-violation";
    case ErrorKind::internal_consistency: return "internal-consistency";
  }
  return "unknown";
}

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace ah
