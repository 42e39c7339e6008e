#pragma once

#include <compare>
#include <limits>
#include <string>

namespace robcons {

// A non-negative cost that is either a finite real or +infinity. Infinity is
// an explicit state rather than a floating-point sentinel so that callers
// must handle it.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;
  constexpr explicit ExtendedReal(double value) : value_(value) {}

  static constexpr ExtendedReal Infinity() {
    ExtendedReal r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_infinite() const { return infinite_; }

  // Throws std::logic_error when infinite.
  double value() const;

  // +infinity maps to the IEEE infinity; for interop only.
  constexpr double to_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  std::string to_string(int precision = 6) const;

  friend constexpr ExtendedReal operator+(ExtendedReal a, ExtendedReal b) {
    if (a.infinite_ || b.infinite_) return Infinity();
    return ExtendedReal(a.value_ + b.value_);
  }
  ExtendedReal& operator+=(ExtendedReal other) { return *this = *this + other; }

  friend constexpr bool operator==(ExtendedReal a, ExtendedReal b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend constexpr std::partial_ordering operator<=>(ExtendedReal a,
                                                     ExtendedReal b) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

}  // namespace robcons
