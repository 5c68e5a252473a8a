#include "uhtp/amplitude.hpp"

#include <cmath>
#include <limits>

#include "uhtp/error.hpp"

namespace uhtp {

namespace {
constexpr double kUnitRoundoff = std::numeric_limits<double>::epsilon() / 2;
}

Amplitude Amplitude::exact(GaussianRational value) {
  Amplitude a;
  a.value_ = value.to_complex();
  a.exact_ = std::move(value);
  return a;
}

Amplitude Amplitude::approximate(std::complex<double> value, double error_bound) {
  if (!(error_bound >= 0.0) || !std::isfinite(error_bound) ||
      !std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw RangeError("amplitude needs finite value and nonnegative error bound");
  }
  Amplitude a;
  a.value_ = value;
  a.error_ = error_bound;
  return a;
}

bool Amplitude::is_zero() const {
  if (exact_) return exact_->is_zero();
  return value_ == std::complex<double>{} && error_ == 0.0;
}

Amplitude operator+(const Amplitude& a, const Amplitude& b) {
  if (a.exact_ && b.exact_) return Amplitude::exact(*a.exact_ + *b.exact_);
  const auto v = a.value_ + b.value_;
  return Amplitude::approximate(v, a.error_ + b.error_ + 2 * kUnitRoundoff * std::abs(v));
}

Amplitude operator*(const Amplitude& a, const Amplitude& b) {
  if (a.exact_ && b.exact_) return Amplitude::exact(*a.exact_ * *b.exact_);
  const auto v = a.value_ * b.value_;
  const double err = std::abs(a.value_) * b.error_ + std::abs(b.value_) * a.error_ +
                     a.error_ * b.error_ + 4 * kUnitRoundoff * std::abs(v);
  return Amplitude::approximate(v, err);
}

}  // namespace uhtp
