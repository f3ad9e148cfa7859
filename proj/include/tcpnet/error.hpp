#pragma once

#include <stdexcept>
#include <string>

namespace tcpnet {

enum class ErrorCode {
  UnknownVariable,
  UnknownValue,
  IncompleteOutcome,
  IncompleteOrder,
  IncompleteSelectorAssignment,
  TooLarge,
  BudgetExceeded,
  WidthExceeded,
  NonBinarySelector,
  NoRoot,
  UnknownDominance,
  InvalidArgument,
  ParseError,
  ValidationFailed,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace tcpnet
