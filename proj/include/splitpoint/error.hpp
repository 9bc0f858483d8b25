#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace splitpoint {

enum class ErrorCode {
  SampleTooSmall,
  NonFiniteInput,
  IndexOutOfRange,
  InvalidRange,
  EmptyRange,
  DensityUnderflow,
  NoBracket,
  DegenerateBandwidth,
  DegenerateSample,
  NoCrossing,
  UnstableDerivative,
  InvalidArgument,
  MissingTruth,
  UnknownModel,
  ColumnNotFound,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can branch on the class of the error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace splitpoint
