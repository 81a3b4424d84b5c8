#include "denjoy/certified.hpp"

#include <ostream>
#include <stdexcept>

namespace denjoy {

CertifiedValue::CertifiedValue(Rational midpoint, Rational radius)
    : mid_(std::move(midpoint)), rad_(std::move(radius)) {
    if (rad_ < 0) throw std::invalid_argument("certified value with negative radius");
}

CertifiedValue CertifiedValue::exact(Rational value) { return CertifiedValue(std::move(value), Rational(0)); }

CertifiedValue CertifiedValue::from_bounds(const Rational& lower, const Rational& upper) {
    if (upper < lower) throw std::invalid_argument("certified value with upper < lower");
    Rational mid = (lower + upper) / 2;
    Rational rad = (upper - lower) / 2;
    return CertifiedValue(std::move(mid), std::move(rad));
}

bool CertifiedValue::contains(const Rational& x) const { return lower() <= x && x <= upper(); }

bool CertifiedValue::contains(const CertifiedValue& other) const {
    return lower() <= other.lower() && other.upper() <= upper();
}

CertifiedValue CertifiedValue::operator-() const { return CertifiedValue(Rational(-mid_), rad_); }

CertifiedValue& CertifiedValue::operator+=(const CertifiedValue& rhs) {
    add_to(mid_, rhs.mid_);
    add_to(rad_, rhs.rad_);
    return *this;
}

CertifiedValue& CertifiedValue::operator-=(const CertifiedValue& rhs) {
    sub_from(mid_, rhs.mid_);
    add_to(rad_, rhs.rad_);
    return *this;
}

CertifiedValue& CertifiedValue::operator+=(const Rational& rhs) {
    add_to(mid_, rhs);
    return *this;
}

CertifiedValue& CertifiedValue::operator-=(const Rational& rhs) {
    sub_from(mid_, rhs);
    return *this;
}

CertifiedValue CertifiedValue::scaled(const Rational& factor) const {
    return CertifiedValue(Rational(mid_ * factor), Rational(rad_ * abs(factor)));
}

CertifiedValue CertifiedValue::widened(const Rational& extra) const {
    if (extra < 0) throw std::invalid_argument("negative widening");
    return CertifiedValue(mid_, Rational(rad_ + extra));
}

CertifiedValue CertifiedValue::rounded_to_dyadic(unsigned bits) const {
    BigInt scale = 1;
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), bits);
    Rational scaled_mid = mid_ * scale;
    BigInt mid_num = denjoy::floor(scaled_mid);
    Rational new_mid = make_rational(mid_num, scale);
    // |mid - new_mid| < 2^-bits, so one grid step on top of the old radius
    // (itself rounded up) covers the shift.
    BigInt rad_num = denjoy::ceil(Rational(rad_ * scale));
    if (scaled_mid.get_den() != 1) rad_num += 1;
    return CertifiedValue(std::move(new_mid), make_rational(rad_num, scale));
}

CertifiedValue operator+(CertifiedValue lhs, const CertifiedValue& rhs) { return lhs += rhs; }
CertifiedValue operator-(CertifiedValue lhs, const CertifiedValue& rhs) { return lhs -= rhs; }
CertifiedValue operator+(CertifiedValue lhs, const Rational& rhs) { return lhs += rhs; }
CertifiedValue operator-(CertifiedValue lhs, const Rational& rhs) { return lhs -= rhs; }

bool certainly_less(const CertifiedValue& a, const CertifiedValue& b) { return a.upper() < b.lower(); }

bool overlaps(const CertifiedValue& a, const CertifiedValue& b) {
    return !(a.upper() < b.lower() || b.upper() < a.lower());
}

Rational circular_distance_bound(const CertifiedValue& a, const CertifiedValue& b) {
    Rational diff = a.midpoint();
    sub_from(diff, b.midpoint());
    wrap_unit(diff);
    static const Rational half(1, 2);
    static const Rational one(1);
    if (cmp(diff, half) > 0) {
        mpq_neg(diff.get_mpq_t(), diff.get_mpq_t());
        add_to(diff, one);
    }
    add_to(diff, a.radius());
    add_to(diff, b.radius());
    return diff;
}

std::ostream& operator<<(std::ostream& os, const CertifiedValue& v) {
    return os << to_string(v.midpoint()) << " +/- " << to_string(v.radius());
}

}  // namespace denjoy
