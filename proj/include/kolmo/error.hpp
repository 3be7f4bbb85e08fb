#ifndef KOLMO_ERROR_HPP_
#define KOLMO_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace kolmo {

enum class ErrorCode {
  kEmptyInput,
  kNegativeMass,
  kNotNormalized,
  kNonMonotone,
  kNonFinite,
  kNegativeEpsilon,
  kInvalidBudget,
  kTooLargeForOracle,
  kInputTooLarge,
  kSupportOverflow,
  kParseError,
  kSchemaError,
  kInvalidParams,
  kIoError,
};

std::string_view errorCodeName(ErrorCode code);

// True for the codes that signal a configured size cap rather than bad data.
bool isResourceLimit(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(errorCodeName(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  /// The message without the code name prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace kolmo

#endif  // KOLMO_ERROR_HPP_
