#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace robcons {

enum class ErrorCode {
  kInvalidInput,
  kNotConnected,
  kInvalidProfile,
  kInfeasibleProfile,
  kSelfInverseCapacityViolation,
  kCapacityExceeded,
  kTooLarge,
  kInvalidState,
  kBlocked,
  kInvalidConfig,
};

// Machine-readable kebab-case name, e.g. "invalid-input".
std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace robcons
