#pragma once

#include <stdexcept>
#include <string>

namespace socrescale {

enum class ErrorCode {
  InvalidArgument,
  RankDeficient,
  NotInterior,
  NotApplicable,
  IterationCapExceeded,
  ProgressViolated,
  DegenerateStep,
  OuterCapExceeded,
  NumericalBreakdown,
  AssumptionViolated,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace socrescale
