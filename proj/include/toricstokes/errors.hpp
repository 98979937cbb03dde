#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toricstokes {

enum class ErrorCode {
  NonPrimitiveRay,
  NotSmooth,
  NotComplete,
  TooFewRays,
  UnknownRayLabel,
  DegenerateNewtonPolygon,
  CountMismatch,
  DegenerateCritical,
  NotAdmissible,
  BasePointTooClose,
  CriticalValue,
  LeadingCoefficientVanishes,
  TrackingFailure,
  PathTooClose,
  NoCollidingPair,
  TransportFailure,
  NonTransversal,
  IndexOutOfRange,
  NotNef,
  NonUnitLeadingTerm,
  MissingStage,
  ParseError,
  UnknownSurface,
};

std::string_view to_string(ErrorCode code);

/// Library error. `stage` names the pipeline stage when the error is
/// propagated through `run_verify`; it is empty for direct module calls.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::string stage = {})
      : std::runtime_error(what), code_(code), stage_(std::move(stage)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& stage() const noexcept { return stage_; }

 private:
  ErrorCode code_;
  std::string stage_;
};

}  // namespace toricstokes
