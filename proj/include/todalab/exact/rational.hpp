#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace todalab::exact {

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator (GMP canonical form).
using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

Rational make_rational(long num, long den = 1);

/// Canonical text form "num/den"; integers are written with denominator 1.
std::string to_string(const Rational& r);

/// Accepts "7", "-3/8", "0.125" and "1e-4" (decimals are converted exactly).
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

Integer binomial(long n, long k);
Integer factorial(long n);

double to_double(const Rational& r);

}  // namespace todalab::exact
