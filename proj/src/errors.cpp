#include "toricstokes/errors.hpp"

namespace toricstokes {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorCode::NotSmooth: return "NotSmooth";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::TooFewRays: return "TooFewRays";
    case ErrorCode::UnknownRayLabel: return "UnknownRayLabel";
    case ErrorCode::DegenerateNewtonPolygon: return "DegenerateNewtonPolygon";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::DegenerateCritical: return "DegenerateCritical";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::BasePointTooClose: return "BasePointTooClose";
    case ErrorCode::CriticalValue: return "CriticalValue";
    case ErrorCode::LeadingCoefficientVanishes: return "LeadingCoefficientVanishes";
    case ErrorCode::TrackingFailure: return "TrackingFailure";
    case ErrorCode::PathTooClose: return "PathTooClose";
    case ErrorCode::NoCollidingPair: return "NoCollidingPair";
    case ErrorCode::TransportFailure: return "TransportFailure";
    case ErrorCode::NonTransversal: return "NonTransversal";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotNef: return "NotNef";
    case ErrorCode::NonUnitLeadingTerm: return "NonUnitLeadingTerm";
    case ErrorCode::MissingStage: return "MissingStage";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownSurface: return "UnknownSurface";
  }
  return "Unknown";
}

}  // namespace toricstokes
