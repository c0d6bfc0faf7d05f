#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace wstar {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  SignatureMismatch,
  ShapeMismatch,
  NotHermitian,
  NotFaithful,
  NotNormalized,
  NotTangent,
  NotTangentCoordinate,
  NotTracePreserving,
  NotStochastic,
  NotUnitary,
  NotCompletelyPositive,
  InvalidPartition,
  InvalidWeights,
  UnknownFunction,
  UnvalidatedFunction,
  SingularFunction,
  NotFaithfulImage,
  DegenerateDraw,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotFaithful: return "NotFaithful";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotTangent: return "NotTangent";
    case ErrorCode::NotTangentCoordinate: return "NotTangentCoordinate";
    case ErrorCode::NotTracePreserving: return "NotTracePreserving";
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotCompletelyPositive: return "NotCompletelyPositive";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::UnknownFunction: return "UnknownFunction";
    case ErrorCode::UnvalidatedFunction: return "UnvalidatedFunction";
    case ErrorCode::SingularFunction: return "SingularFunction";
    case ErrorCode::NotFaithfulImage: return "NotFaithfulImage";
    case ErrorCode::DegenerateDraw: return "DegenerateDraw";
  }
  return "Unknown";
}

/// Library error carrying a machine-readable code plus human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

/// Formats a scalar for diagnostics. Defect messages report values many
/// orders of magnitude below 1, which fixed-point formatting would collapse
/// to 0.000000.
inline std::string format_scalar(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace wstar
