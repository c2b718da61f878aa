#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace simest {

enum class ErrorCode {
  InvalidArgument,
  AllZeroWeights,
  NonFiniteWeight,
  EmptyDraws,
  DegenerateSample,
  DegenerateInnovations,
  ShapeMismatch,
  SingularDesign,
  SingularCovariance,
  NonPositiveVariance,
  ObjectiveNaN,
  NoConvergence,
  NonFiniteEntry,
  NoBindingFunction,
  InitializationFailure,
  TooManyFailures,
  DenominatorNonPositive,
  UnsupportedEstimator,
  TooFewEffectiveDraws,
  IOFailure,
  GridMismatch,
  ConfigError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind rather than the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace simest
