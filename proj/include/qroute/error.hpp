#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qroute {

enum class ErrorCode {
  InvalidArgument,
  NonContiguousPath,
  SameSourceDest,
  NodeOutOfRange,
  TimeRegression,
  EdgeOutOfRange,
  VarMapMismatch,
  LengthMismatch,
  QubitLimitExceeded,
  SizeMismatch,
  InvalidProbability,
  CoordinateOutOfRange,
  NoPathExists,
  EmptyMarkedSet,
  InvalidCounts,
  DimensionMismatch,
  TooManyVariables,
  InvalidOptimum,
  InfeasibleCandidate,
  EmptySamples,
  InvalidInputs,
  ScenarioInvalid,
  GenerationFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qroute
