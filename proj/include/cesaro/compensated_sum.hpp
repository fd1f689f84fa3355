#pragma once

#include <cmath>

namespace cesaro {

/// Kahan-Babuska-Neumaier summation.
///
/// Unlike plain Kahan, the correction is taken from whichever operand is
/// larger in magnitude, so it stays accurate when a term exceeds the running
/// sum (sign changes around zero are common for the sequences we feed it).
template <typename Real>
class CompensatedSum {
 public:
  constexpr CompensatedSum() = default;
  constexpr explicit CompensatedSum(Real initial) : sum_(initial) {}

  constexpr CompensatedSum& operator+=(Real value) {
    const Real t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  constexpr Real value() const { return sum_ + compensation_; }
  constexpr explicit operator Real() const { return value(); }

  constexpr void reset() {
    sum_ = Real{0};
    compensation_ = Real{0};
  }

 private:
  Real sum_ = Real{0};
  Real compensation_ = Real{0};
};

using CompensatedSumD = CompensatedSum<double>;

}  // namespace cesaro
