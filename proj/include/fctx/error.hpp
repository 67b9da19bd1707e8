#pragma once

#include <stdexcept>
#include <string>

namespace fctx {

enum class ErrorCode {
  InvalidArgument,
  AllZeroMembership,
  BothEmpty,
  AllRejected,
  DegenerateWord,
  MissingWordSurvey,
  MissingInput,
  UnknownWord,
  NoRuleFired,
  EmptyCodebook,
  Io,
  Format,
  Validation,
  DegenerateInterval,
  NonPositiveMax,
  UnknownMember,
  NonMonotoneTimestamp,
  Internal,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fctx
