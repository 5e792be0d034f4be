#pragma once

#include <stdexcept>
#include <string>

namespace genexp {

enum class ErrorCode {
  // curve validation
  NonMonotoneArgument,
  PointOutsideHalfDisc,
  EndpointMismatch,
  DegenerateLipschitz,
  MalformedSpec,
  NotDifferentiableHere,
  // growth validation
  NotIncreasing,
  DerivativeNotMonotone,
  NoGrowth,
  OutOfRange,
  BelowThreshold,
  // map construction
  CertificationFailed,
  NoSuchM,
  NotCertified,
  NoConvergence,
  // symbolic / pullback
  NotGBounded,
  NotInH,
  AddressMismatch,
  // rendering / io
  ResolutionTooLarge,
  InvalidWindow,
  IoFailure,
  // config
  ParseError,
  ValidationError,
};

const char* error_code_name(ErrorCode c);

// Every recoverable failure in the library throws this. `code` is stable and
// machine-readable; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + msg),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace genexp
