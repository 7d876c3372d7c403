#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace brlkit {

/// Every failure the toolkit can report. The CLI maps the three kinds onto
/// exit codes: Usage -> 2, Property -> 1, Numeric -> 3.
enum class ErrorCode {
  // malformed or inconsistent input
  DimensionMismatch,
  NonFiniteEntry,
  SchemaError,
  IoError,
  NonPositiveScale,
  NonPositiveEpsilon,
  NotHermitian,
  InconsistentTrajectory,
  // a checked property does not hold
  NotMinimal,
  MomentMismatch,
  InvalidSimilarity,
  NotContractiveTarget,
  NotPositiveDefinite,
  InfeasibleScaling,
  NotStrictSchur,
  UnstableSystem,
  // numerical breakdown
  SingularResolvent,
  SingularTransform,
  SingularMiddleTerm,
  IllConditioned,
  NoConvergence,
  NoEpsilonFound,
};

enum class ErrorKind { Usage, Property, Numeric };

ErrorKind error_kind(ErrorCode code);
std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return error_kind(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& message);

}  // namespace brlkit
