#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace uhtp {

// Exact arbitrary-precision rational. Times, thresholds, and pulse widths
// are all carried in this type so that grid ties are decided exactly.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Parses "p/q" or "p". Decimal and exponent notation are rejected.
Rational parse_rational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

// Exact decimal expansion when the denominator has only factors 2 and 5,
// otherwise the "p/q" form.
std::string format_rational_decimal(const Rational& value);

std::int64_t floor_to_int(const Rational& value);
double to_double(const Rational& value);

// Exact conversion of a finite double.
Rational from_double(double value);

bool is_integer(const Rational& value);

}  // namespace uhtp
