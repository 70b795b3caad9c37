#pragma once

#include <stdexcept>
#include <string>

namespace povm {

enum class ErrorCode {
  NonFinite,
  NotHermitian,
  NotAState,
  NotPositive,
  ZeroElement,
  InvalidSet,
  InvalidState,
  NotPure,
  ProbabilityOutOfRange,
  InvalidArgument,
  NoFeasible,
  ParseError,
  SchemaError,
  ValidationError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotAState: return "NotAState";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::InvalidSet: return "InvalidSet";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoFeasible: return "NoFeasible";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace povm
