#include "genexp/errors.hpp"

namespace genexp {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonMonotoneArgument: return "NonMonotoneArgument";
    case ErrorCode::PointOutsideHalfDisc: return "PointOutsideHalfDisc";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::DegenerateLipschitz: return "DegenerateLipschitz";
    case ErrorCode::MalformedSpec: return "MalformedSpec";
    case ErrorCode::NotDifferentiableHere: return "NotDifferentiableHere";
    case ErrorCode::NotIncreasing: return "NotIncreasing";
    case ErrorCode::DerivativeNotMonotone: return "DerivativeNotMonotone";
    case ErrorCode::NoGrowth: return "NoGrowth";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BelowThreshold: return "BelowThreshold";
    case ErrorCode::CertificationFailed: return "CertificationFailed";
    case ErrorCode::NoSuchM: return "NoSuchM";
    case ErrorCode::NotCertified: return "NotCertified";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotGBounded: return "NotGBounded";
    case ErrorCode::NotInH: return "NotInH";
    case ErrorCode::AddressMismatch: return "AddressMismatch";
    case ErrorCode::ResolutionTooLarge: return "ResolutionTooLarge";
    case ErrorCode::InvalidWindow: return "InvalidWindow";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "UnknownError";
}

}  // namespace genexp
