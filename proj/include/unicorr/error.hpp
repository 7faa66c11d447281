#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace unicorr {

enum class ErrorCode {
  NotSquare,
  DimMismatch,
  NotHermitian,
  NotPositive,
  TraceZero,
  BadSubsystemIndex,
  ConvergenceFailure,
  NotNormalized,
  BadIndices,
  PreconditionUnmet,
  BadLength,
  BadParameter,
  BadKind,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::TraceZero: return "TraceZero";
    case ErrorCode::BadSubsystemIndex: return "BadSubsystemIndex";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::BadIndices: return "BadIndices";
    case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::BadKind: return "BadKind";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace unicorr
