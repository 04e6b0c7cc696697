#pragma once

#include <stdexcept>
#include <string>

namespace subcrit {

// Numeric values are mirrored by sc_status in subcrit.h; keep them in sync.
enum class ErrorCode : int {
  InvalidArgument = 1,
  UnknownClass = 2,
  CompositionAtNonzeroConstant = 3,
  Disconnected = 4,
  MissingWeights = 5,
  NonPositiveWeight = 6,
  ParameterOutOfRange = 7,
  SamplerRunaway = 8,
  SingularSystem = 9,
  NoBracket = 10,
  OrderTooSmall = 11,
  InfeasibleSize = 12,
  DomainTooSmall = 13,
  EmptySample = 14,
  ParseError = 15,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace subcrit
