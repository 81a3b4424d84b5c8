#pragma once

#include <iosfwd>

#include "denjoy/rational.hpp"

namespace denjoy {

/**
 * A real number known to lie in the closed interval
 * [midpoint - radius, midpoint + radius]. Both ends are exact rationals, so
 * every comparison made on the enclosure is itself exact.
 */
class CertifiedValue {
public:
    CertifiedValue() = default;
    CertifiedValue(Rational midpoint, Rational radius);

    static CertifiedValue exact(Rational value);
    static CertifiedValue from_bounds(const Rational& lower, const Rational& upper);

    const Rational& midpoint() const noexcept { return mid_; }
    const Rational& radius() const noexcept { return rad_; }
    Rational lower() const { return mid_ - rad_; }
    Rational upper() const { return mid_ + rad_; }
    bool is_exact() const { return rad_ == 0; }

    bool contains(const Rational& x) const;
    // True when this enclosure contains every point of `other`.
    bool contains(const CertifiedValue& other) const;

    CertifiedValue operator-() const;
    CertifiedValue& operator+=(const CertifiedValue& rhs);
    CertifiedValue& operator-=(const CertifiedValue& rhs);
    CertifiedValue& operator+=(const Rational& rhs);
    CertifiedValue& operator-=(const Rational& rhs);

    CertifiedValue scaled(const Rational& factor) const;
    CertifiedValue widened(const Rational& extra) const;

    // Midpoint moved onto the grid 2^-bits and radius rounded up onto the same
    // grid; the new enclosure contains the old one.
    CertifiedValue rounded_to_dyadic(unsigned bits) const;

    friend bool operator==(const CertifiedValue& a, const CertifiedValue& b) {
        return a.mid_ == b.mid_ && a.rad_ == b.rad_;
    }

private:
    Rational mid_{0};
    Rational rad_{0};
};

CertifiedValue operator+(CertifiedValue lhs, const CertifiedValue& rhs);
CertifiedValue operator-(CertifiedValue lhs, const CertifiedValue& rhs);
CertifiedValue operator+(CertifiedValue lhs, const Rational& rhs);
CertifiedValue operator-(CertifiedValue lhs, const Rational& rhs);

// Every point of a is strictly below every point of b.
bool certainly_less(const CertifiedValue& a, const CertifiedValue& b);
bool overlaps(const CertifiedValue& a, const CertifiedValue& b);

// Upper bound on the distance between any point of a and any point of b,
// measured on the circle R/Z.
Rational circular_distance_bound(const CertifiedValue& a, const CertifiedValue& b);

std::ostream& operator<<(std::ostream& os, const CertifiedValue& v);

}  // namespace denjoy
