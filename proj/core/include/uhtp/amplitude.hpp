#pragma once

#include <complex>
#include <optional>

#include "uhtp/rational.hpp"

namespace uhtp {

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }  // |z|^2
  bool is_zero() const { return re == 0 && im == 0; }
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussianRational&, const GaussianRational&) = default;
};

// Complex amplitude that is either exact (Gaussian rational, zero error)
// or a double with a tracked absolute error bound.
class Amplitude {
 public:
  static Amplitude exact(GaussianRational value);
  static Amplitude exact(const Rational& re, const Rational& im = 0) {
    return exact(GaussianRational{re, im});
  }
  // Throws RangeError on a negative or non-finite bound.
  static Amplitude approximate(std::complex<double> value, double error_bound);

  bool is_exact() const { return exact_.has_value(); }
  const std::optional<GaussianRational>& exact_value() const { return exact_; }
  std::complex<double> value() const { return value_; }
  double error_bound() const { return error_; }
  bool is_zero() const;

  // Error bounds add operand bounds plus one rounding of the result.
  friend Amplitude operator+(const Amplitude& a, const Amplitude& b);
  friend Amplitude operator*(const Amplitude& a, const Amplitude& b);

  friend bool operator==(const Amplitude&, const Amplitude&) = default;

 private:
  Amplitude() = default;
  std::optional<GaussianRational> exact_;
  std::complex<double> value_;
  double error_ = 0.0;
};

}  // namespace uhtp
