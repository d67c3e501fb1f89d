#include "svpath/error.hpp"

namespace svp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::NotAVertex: return "NotAVertex";
    case ErrorCode::DegenerateVertex: return "DegenerateVertex";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::MappingFailed: return "MappingFailed";
    case ErrorCode::DependentVectors: return "DependentVectors";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::VerticalEdge: return "VerticalEdge";
    case ErrorCode::LeftwardEdge: return "LeftwardEdge";
    case ErrorCode::StalledWalk: return "StalledWalk";
    case ErrorCode::StepLimit: return "StepLimit";
    case ErrorCode::UnboundedShadow: return "UnboundedShadow";
    case ErrorCode::NonMonotoneSlopes: return "NonMonotoneSlopes";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::MissingDelta: return "MissingDelta";
    case ErrorCode::UnboundedSample: return "UnboundedSample";
    case ErrorCode::InfeasibleTotals: return "InfeasibleTotals";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace svp
