#include "kolmo/error.hpp"

namespace kolmo {

std::string_view errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyInput: return "EmptyInput";
    case ErrorCode::kNegativeMass: return "NegativeMass";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kNonMonotone: return "NonMonotone";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kNegativeEpsilon: return "NegativeEpsilon";
    case ErrorCode::kInvalidBudget: return "InvalidBudget";
    case ErrorCode::kTooLargeForOracle: return "TooLargeForOracle";
    case ErrorCode::kInputTooLarge: return "InputTooLarge";
    case ErrorCode::kSupportOverflow: return "SupportOverflow";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kIoError: return "IoError";
  }
  return "UnknownError";
}

bool isResourceLimit(ErrorCode code) {
  return code == ErrorCode::kTooLargeForOracle || code == ErrorCode::kInputTooLarge ||
         code == ErrorCode::kSupportOverflow;
}

}  // namespace kolmo
