#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wft {

enum class ErrorCode {
  NonInvertible,
  SingularJacobian,
  NotStrictlyHyperbolic,
  DomainExit,
  CurveNewtonFailure,
  DegenerateJump,
  RiemannNewtonFailure,
  TVBlowup,
  TooManyFronts,
  OutOfRetainedRange,
  EmptyCone,
  NotRich,
  DegenerateFit,
  BadConfig,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

// Process exit status for the CLI: 2 invariant breach, 3 solver failure, 4 bad config.
int exit_status(ErrorCode code);

} // namespace wft
