#pragma once

#include <stdexcept>
#include <string>

namespace sparsic {

enum class ErrorCode {
  DuplicateVertex,
  EmptySimplex,
  InvalidVertex,
  ClosureViolation,
  NonpositiveWeight,
  ConflictingWeight,
  NotFound,
  OddCount,
  EmptyInput,
  OrderOutOfRange,
  DimensionMismatch,
  ZeroOperator,
  SizeGuard,
  NoSimplices,
  DegenerateMeasure,
  InvalidEps,
  LevelMismatch,
  ParseError,
  InvalidConfig,
};

const char* error_code_name(ErrorCode code);

/// All library failures throw this; `code()` identifies the condition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace sparsic
