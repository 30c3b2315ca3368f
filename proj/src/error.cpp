#include "qroute/error.hpp"

namespace qroute {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonContiguousPath: return "NonContiguousPath";
    case ErrorCode::SameSourceDest: return "SameSourceDest";
    case ErrorCode::NodeOutOfRange: return "NodeOutOfRange";
    case ErrorCode::TimeRegression: return "TimeRegression";
    case ErrorCode::EdgeOutOfRange: return "EdgeOutOfRange";
    case ErrorCode::VarMapMismatch: return "VarMapMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::QubitLimitExceeded: return "QubitLimitExceeded";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::CoordinateOutOfRange: return "CoordinateOutOfRange";
    case ErrorCode::NoPathExists: return "NoPathExists";
    case ErrorCode::EmptyMarkedSet: return "EmptyMarkedSet";
    case ErrorCode::InvalidCounts: return "InvalidCounts";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooManyVariables: return "TooManyVariables";
    case ErrorCode::InvalidOptimum: return "InvalidOptimum";
    case ErrorCode::InfeasibleCandidate: return "InfeasibleCandidate";
    case ErrorCode::EmptySamples: return "EmptySamples";
    case ErrorCode::InvalidInputs: return "InvalidInputs";
    case ErrorCode::ScenarioInvalid: return "ScenarioInvalid";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
  }
  return "Unknown";
}

}  // namespace qroute
