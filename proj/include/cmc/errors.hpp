#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cmc {

enum class ErrorCode {
  InvalidArgument,
  BelowThreshold,
  NoPeriodicSolution,
  HyperbolicUnbounded,
  QuadratureFailure,
  Infeasible,
  NoCrossing,
  EmptyInterval,
  NoRoot,
  NotClosed,
  PoleCollision,
  NotMinimal,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can report it without parsing messages.
class CmcError : public std::runtime_error {
 public:
  CmcError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cmc
