#include "robcons/error.hpp"

#include <cstdio>
#include <stdexcept>

#include "robcons/extended_real.hpp"

namespace robcons {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid-input";
    case ErrorCode::kNotConnected:
      return "not-connected";
    case ErrorCode::kInvalidProfile:
      return "invalid-profile";
    case ErrorCode::kInfeasibleProfile:
      return "infeasible-profile";
    case ErrorCode::kSelfInverseCapacityViolation:
      return "self-inverse-capacity-violation";
    case ErrorCode::kCapacityExceeded:
      return "capacity-exceeded";
    case ErrorCode::kTooLarge:
      return "too-large";
    case ErrorCode::kInvalidState:
      return "invalid-state";
    case ErrorCode::kBlocked:
      return "blocked";
    case ErrorCode::kInvalidConfig:
      return "invalid-config";
  }
  return "unknown";
}

double ExtendedReal::value() const {
  if (infinite_) throw std::logic_error("value() called on +infinity");
  return value_;
}

std::string ExtendedReal::to_string(int precision) const {
  if (infinite_) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, value_);
  return buf;
}

}  // namespace robcons
