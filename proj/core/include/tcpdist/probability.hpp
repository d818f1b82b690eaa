#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tcpdist {

/// A real number in [0, 1].
///
/// Construction from an out-of-range value throws std::domain_error. Values
/// produced by floating-point arithmetic that overshoot the interval by a
/// rounding error should go through Probability::clamped instead.
class Probability {
 public:
  constexpr Probability() noexcept = default;

  constexpr explicit Probability(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
      throw std::domain_error("probability out of [0,1]: " + std::to_string(value));
    }
  }

  /// Clamp into [0,1]; NaN is still rejected.
  static Probability clamped(double value) {
    if (value != value) throw std::domain_error("probability is NaN");
    return Probability(std::clamp(value, 0.0, 1.0));
  }

  constexpr double value() const noexcept { return value_; }
  constexpr operator double() const noexcept { return value_; }

  constexpr Probability complement() const noexcept {
    Probability p;
    p.value_ = 1.0 - value_;
    return p;
  }

 private:
  double value_ = 0.0;
};

}  // namespace tcpdist
