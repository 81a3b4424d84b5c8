#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace denjoy {

using BigInt = mpz_class;
using Rational = mpq_class;

// num/den in lowest terms with positive denominator.
Rational make_rational(const BigInt& num, const BigInt& den);

// 2^exponent, exponent may be negative.
Rational pow2(long exponent);

BigInt floor(const Rational& x);
BigInt ceil(const Rational& x);
Rational abs(const Rational& x);

// a += b and a -= b, skipping the gcd when both denominators are powers of
// two.
void add_to(Rational& a, const Rational& b);
void sub_from(Rational& a, const Rational& b);
// x mod 1, in place, landing in [0, 1).
void wrap_unit(Rational& x);

// Integer square root (floor) of a nonnegative integer.
BigInt isqrt(const BigInt& n);
bool is_perfect_square(const BigInt& n);

// Always "p/q", also for integers ("3/1", "0/1").
std::string to_string(const Rational& x);

// Accepts "p/q", "p", decimals ("0.001", "-2.5") and scientific notation
// ("1e-6", "2.5E3"). The result is exact.
Rational parse_rational(std::string_view text);

// Nearest double, for rendering only.
double to_double(const Rational& x);

}  // namespace denjoy
