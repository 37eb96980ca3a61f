#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace effdom {

// Exact arbitrary-precision arithmetic. No floating point is used anywhere
// in the core; decimal output is produced by exact digit extraction.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Largest t with t*t <= n. Requires n >= 0.
Int isqrt(const Int& n);

/// floor(x / 2^-bits) scaled back, i.e. the largest multiple of 2^-bits <= x.
Rational dyadic_floor(const Rational& x, unsigned bits);
/// Smallest multiple of 2^-bits >= x.
Rational dyadic_ceil(const Rational& x, unsigned bits);

/// 2^-n as an exact rational.
Rational pow2_inv(unsigned n);
/// 2^n as an Int.
Int pow2(unsigned n);

/// Parses "p/q" or "p" with optional leading '-'. Rejects decimals and
/// anything else; throws std::invalid_argument.
Rational parse_rational(const std::string& text);

/// "p/q" or "p" when the denominator is 1.
std::string rational_to_string(const Rational& q);

/// Exact decimal rendering with the given number of fraction digits.
/// round_up selects outward rounding direction (true: toward +inf).
std::string rational_to_decimal(const Rational& q, unsigned digits, bool round_up);

}  // namespace effdom
