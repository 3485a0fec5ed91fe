#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opineq {

enum class ErrorKind {
  NonHermitian,
  NoConvergence,
  DomainError,
  DimensionMismatch,
  NotContraction,
  NotIsometry,
  HypothesisViolated,
  ClassViolation,
  SearchExhausted,
  InvalidSpec,
  InstanceGenerationFailure,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this exception type; `kind()`
/// lets callers (and the CLI exit-code logic) distinguish them.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotContraction: return "NotContraction";
    case ErrorKind::NotIsometry: return "NotIsometry";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::ClassViolation: return "ClassViolation";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::InstanceGenerationFailure: return "InstanceGenerationFailure";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace opineq
