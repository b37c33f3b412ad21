#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

namespace hgv {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;
/// 50 significant digits; used wherever a logarithm or root enters a count.
using Real = boost::multiprecision::cpp_bin_float_50;

/// Accepts "p/q", integers, and decimal or scientific literals ("0.01",
/// "2.5e-3"); decimals are converted exactly.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational &value);
std::string to_string(const BigInt &value);

double to_double(const Rational &value);
Real to_real(const Rational &value);
Real to_real(const BigInt &value);

BigInt floor_rational(const Rational &value);
BigInt ceil_rational(const Rational &value);

Real euler_e();

/// Floor/ceil of an extended-precision value. Values within `guard` (relative)
/// of an integer are rejected with NumericallyUnstable: the integer answer
/// would depend on rounding in the last digits.
BigInt stable_floor(const Real &value, const Real &guard = Real("1e-25"));
BigInt stable_ceil(const Real &value, const Real &guard = Real("1e-25"));
/// True when `value` lies within the guard band of an integer.
bool near_integer(const Real &value, const Real &guard = Real("1e-25"));

BigInt nearest_integer(const Real &value);

/// Scientific notation with `digits` significant digits, e.g. "9.50e+10".
std::string scientific(const Real &value, int digits = 6);
/// Integer part printed in full decimal (for large counts).
std::string decimal_integer(const Real &value);

std::int64_t to_int64(const BigInt &value);

}  // namespace hgv
