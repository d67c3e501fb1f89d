#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace svp {

enum class ErrorCode {
  InvalidArgument,
  ZeroVector,
  Singular,
  Overflow,
  Infeasible,
  NotAVertex,
  DegenerateVertex,
  CapExceeded,
  Disconnected,
  MappingFailed,
  DependentVectors,
  NotOrthogonal,
  VerticalEdge,
  LeftwardEdge,
  StalledWalk,
  StepLimit,
  UnboundedShadow,
  NonMonotoneSlopes,
  RetriesExhausted,
  TooShort,
  MissingDelta,
  UnboundedSample,
  InfeasibleTotals,
  ParseError,
  SchemaError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure the library reports carries one of the codes above; the C API
// maps them one-to-one onto svp_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace svp
