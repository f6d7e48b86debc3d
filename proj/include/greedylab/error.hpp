#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace greedylab {

enum class ErrorKind {
  InvalidVector,
  IncompleteSpec,
  ZeroDirection,
  ConvergenceFailure,
  ScopeTooSmall,
  CapExceeded,
  DomainError,
  EmptyFamily,
  DisjointnessViolated,
  PreconditionViolated,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the CLI in
/// particular) can map it onto an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidVector: return "InvalidVector";
    case ErrorKind::IncompleteSpec: return "IncompleteSpec";
    case ErrorKind::ZeroDirection: return "ZeroDirection";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::ScopeTooSmall: return "ScopeTooSmall";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::DisjointnessViolated: return "DisjointnessViolated";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace greedylab
