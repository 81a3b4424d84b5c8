#pragma once

#include <utility>

#include "denjoy/certified.hpp"
#include "denjoy/continued_fraction.hpp"
#include "denjoy/rational.hpp"

namespace denjoy {

class IntegerMatrix2;

// Exact real number (p + r*sqrt(d)) / q with d > 1 not a perfect square,
// r != 0 and q > 0. Only irrational values are representable.
class QuadraticSurd {
public:
    QuadraticSurd(BigInt p, BigInt r, BigInt q, BigInt d);

    static QuadraticSurd from_continued_fraction(const ContinuedFraction& cf);

    const BigInt& p() const noexcept { return p_; }
    const BigInt& r() const noexcept { return r_; }
    const BigInt& q() const noexcept { return q_; }
    const BigInt& d() const noexcept { return d_; }

    int sign() const;
    BigInt floor() const;
    QuadraticSurd operator-() const;
    QuadraticSurd operator+(const BigInt& k) const;
    QuadraticSurd operator-(const BigInt& k) const;
    QuadraticSurd mobius(const IntegerMatrix2& m) const;

    // Sign of (*this - other); both must share the same radicand after
    // normalization, otherwise std::invalid_argument.
    int compare(const QuadraticSurd& other) const;

    // Continued fraction of the fractional part {x}, together with floor(x).
    std::pair<BigInt, ContinuedFraction> expand() const;

    CertifiedValue enclose(const Rational& eps) const;

private:
    void normalize();

    BigInt p_, r_, q_, d_;
};

}  // namespace denjoy
