#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace relc {

enum class ErrorCode {
  kRepeatedPoint,
  kPointOutOfRange,
  kMalformedSyntax,
  kDegreeMismatch,
  kLengthMismatch,
  kNotTransitive,
  kNotInGroup,
  kDegreeTooLarge,
  kGroupTooLarge,
  kPrimeDoesNotDivide,
  kNotFrobenius,
  kNotNormal,
  kConditionFailed,
  kAbelianInput,
  kNoValidPair,
  kTooLarge,
  kCapExceeded,
  kBadParameter,
  kArityTooLarge,
  kVertexOutOfRange,
  kParseError,
};

inline std::string_view error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::kRepeatedPoint: return "RepeatedPoint";
    case ErrorCode::kPointOutOfRange: return "PointOutOfRange";
    case ErrorCode::kMalformedSyntax: return "MalformedSyntax";
    case ErrorCode::kDegreeMismatch: return "DegreeMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNotTransitive: return "NotTransitive";
    case ErrorCode::kNotInGroup: return "NotInGroup";
    case ErrorCode::kDegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::kGroupTooLarge: return "GroupTooLarge";
    case ErrorCode::kPrimeDoesNotDivide: return "PrimeDoesNotDivide";
    case ErrorCode::kNotFrobenius: return "NotFrobenius";
    case ErrorCode::kNotNormal: return "NotNormal";
    case ErrorCode::kConditionFailed: return "ConditionFailed";
    case ErrorCode::kAbelianInput: return "AbelianInput";
    case ErrorCode::kNoValidPair: return "NoValidPair";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kBadParameter: return "BadParameter";
    case ErrorCode::kArityTooLarge: return "ArityTooLarge";
    case ErrorCode::kVertexOutOfRange: return "VertexOutOfRange";
    case ErrorCode::kParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_code_name(code)) +
                           (detail.empty() ? "" : ": " + detail)),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail = {}) {
  throw Error(code, detail);
}

}  // namespace relc
