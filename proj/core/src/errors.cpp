#include "brlkit/errors.hpp"

namespace brlkit {

ErrorKind error_kind(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch:
    case ErrorCode::NonFiniteEntry:
    case ErrorCode::SchemaError:
    case ErrorCode::IoError:
    case ErrorCode::NonPositiveScale:
    case ErrorCode::NonPositiveEpsilon:
    case ErrorCode::NotHermitian:
    case ErrorCode::InconsistentTrajectory:
      return ErrorKind::Usage;
    case ErrorCode::NotMinimal:
    case ErrorCode::MomentMismatch:
    case ErrorCode::InvalidSimilarity:
    case ErrorCode::NotContractiveTarget:
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::InfeasibleScaling:
    case ErrorCode::NotStrictSchur:
    case ErrorCode::UnstableSystem:
      return ErrorKind::Property;
    case ErrorCode::SingularResolvent:
    case ErrorCode::SingularTransform:
    case ErrorCode::SingularMiddleTerm:
    case ErrorCode::IllConditioned:
    case ErrorCode::NoConvergence:
    case ErrorCode::NoEpsilonFound:
      return ErrorKind::Numeric;
  }
  return ErrorKind::Numeric;
}

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NonPositiveScale: return "NonPositiveScale";
    case ErrorCode::NonPositiveEpsilon: return "NonPositiveEpsilon";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::InconsistentTrajectory: return "InconsistentTrajectory";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::MomentMismatch: return "MomentMismatch";
    case ErrorCode::InvalidSimilarity: return "InvalidSimilarity";
    case ErrorCode::NotContractiveTarget: return "NotContractiveTarget";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::InfeasibleScaling: return "InfeasibleScaling";
    case ErrorCode::NotStrictSchur: return "NotStrictSchur";
    case ErrorCode::UnstableSystem: return "UnstableSystem";
    case ErrorCode::SingularResolvent: return "SingularResolvent";
    case ErrorCode::SingularTransform: return "SingularTransform";
    case ErrorCode::SingularMiddleTerm: return "SingularMiddleTerm";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NoEpsilonFound: return "NoEpsilonFound";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

void raise(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace brlkit
