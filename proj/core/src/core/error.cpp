#include "simest/core/error.hpp"

namespace simest {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::AllZeroWeights: return "AllZeroWeights";
    case ErrorCode::NonFiniteWeight: return "NonFiniteWeight";
    case ErrorCode::EmptyDraws: return "EmptyDraws";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::DegenerateInnovations: return "DegenerateInnovations";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SingularDesign: return "SingularDesign";
    case ErrorCode::SingularCovariance: return "SingularCovariance";
    case ErrorCode::NonPositiveVariance: return "NonPositiveVariance";
    case ErrorCode::ObjectiveNaN: return "ObjectiveNaN";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::NoBindingFunction: return "NoBindingFunction";
    case ErrorCode::InitializationFailure: return "InitializationFailure";
    case ErrorCode::TooManyFailures: return "TooManyFailures";
    case ErrorCode::DenominatorNonPositive: return "DenominatorNonPositive";
    case ErrorCode::UnsupportedEstimator: return "UnsupportedEstimator";
    case ErrorCode::TooFewEffectiveDraws: return "TooFewEffectiveDraws";
    case ErrorCode::IOFailure: return "IOFailure";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace simest
