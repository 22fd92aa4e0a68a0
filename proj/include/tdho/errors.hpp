#pragma once

#include <stdexcept>
#include <string>

namespace tdho {

enum class ErrorCode {
  NonFiniteSigma,
  StepFailure,
  TrappedTrajectory,
  BadFit,
  OutOfRange,
  OutOfDomain,
  ZeroTau,
  SingularFactor,
  NonpositiveTime,
  LambdaOutOfRange,
  MassDrift,
  NonFinite,
  NoContraction,
  QuadratureFailure,
  InsufficientSamples,
  NonPositiveError,
  InsufficientSpan,
  InadmissiblePair,
  ParseError,
  ValidationError,
  IoError,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonFiniteSigma: return "NonFiniteSigma";
    case ErrorCode::StepFailure: return "StepFailure";
    case ErrorCode::TrappedTrajectory: return "TrappedTrajectory";
    case ErrorCode::BadFit: return "BadFit";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::ZeroTau: return "ZeroTau";
    case ErrorCode::SingularFactor: return "SingularFactor";
    case ErrorCode::NonpositiveTime: return "NonpositiveTime";
    case ErrorCode::LambdaOutOfRange: return "LambdaOutOfRange";
    case ErrorCode::MassDrift: return "MassDrift";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NoContraction: return "NoContraction";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::NonPositiveError: return "NonPositiveError";
    case ErrorCode::InsufficientSpan: return "InsufficientSpan";
    case ErrorCode::InadmissiblePair: return "InadmissiblePair";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace tdho
