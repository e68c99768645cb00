#include "sparsic/errors.hpp"

namespace sparsic {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateVertex: return "DuplicateVertex";
    case ErrorCode::EmptySimplex: return "EmptySimplex";
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::ClosureViolation: return "ClosureViolation";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::ConflictingWeight: return "ConflictingWeight";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::OddCount: return "OddCount";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::OrderOutOfRange: return "OrderOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::SizeGuard: return "SizeGuard";
    case ErrorCode::NoSimplices: return "NoSimplices";
    case ErrorCode::DegenerateMeasure: return "DegenerateMeasure";
    case ErrorCode::InvalidEps: return "InvalidEps";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "UnknownError";
}

}  // namespace sparsic
