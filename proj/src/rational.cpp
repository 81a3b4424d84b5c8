#include "denjoy/rational.hpp"

#include <algorithm>
#include <cctype>

#include "denjoy/errors.hpp"

namespace denjoy {

Rational make_rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational pow2(long exponent) {
    BigInt p = 1;
    if (exponent >= 0) {
        mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
        return Rational(p);
    }
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-exponent));
    return Rational(BigInt(1), p);
}

BigInt floor(const Rational& x) {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

BigInt ceil(const Rational& x) {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::invalid_argument("isqrt of a negative integer");
    BigInt r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const BigInt& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

std::string to_string(const Rational& x) {
    Rational c = x;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) throw ParseError("expected digits in '" + std::string(whole) + "'");
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw ParseError("invalid number '" + std::string(whole) + "'");
        }
    }
    return BigInt(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw ParseError("empty number");

    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = parse_integer(s.substr(0, slash), text);
        BigInt den = parse_integer(s.substr(slash + 1), text);
        if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        value = make_rational(num, den);
    } else {
        long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            std::string_view exp_part = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
                exp_negative = exp_part.front() == '-';
                exp_part.remove_prefix(1);
            }
            BigInt magnitude = parse_integer(exp_part, text);
            if (magnitude > 100000) throw ParseError("exponent too large in '" + std::string(text) + "'");
            exponent = magnitude.get_si();
            if (exp_negative) exponent = -exponent;
            s = s.substr(0, e);
        }
        std::string digits;
        if (auto dot = s.find('.'); dot != std::string_view::npos) {
            std::string_view int_part = s.substr(0, dot);
            std::string_view frac_part = s.substr(dot + 1);
            if (int_part.empty() && frac_part.empty()) throw ParseError("invalid number '" + std::string(text) + "'");
            digits = std::string(int_part) + std::string(frac_part);
            exponent -= static_cast<long>(frac_part.size());
        } else {
            digits = std::string(s);
        }
        BigInt mantissa = parse_integer(digits, text);
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
        value = exponent < 0 ? make_rational(mantissa, scale) : Rational(BigInt(mantissa * scale));
    }
    return negative ? Rational(-value) : value;
}

double to_double(const Rational& x) { return x.get_d(); }

namespace {

bool is_dyadic(const Rational& x) {
    mpz_srcptr den = x.get_den_mpz_t();
    const std::size_t top = mpz_size(den) - 1;
    for (std::size_t i = 0; i < top; ++i) {
        if (mpz_getlimbn(den, i) != 0) return false;
    }
    const mp_limb_t high = mpz_getlimbn(den, top);
    return (high & (high - 1)) == 0;
}

void dyadic_combine(Rational& a, const Rational& b, bool subtract) {
    mpz_ptr num = a.get_num_mpz_t();
    mpz_ptr den = a.get_den_mpz_t();
    const int order = mpz_cmp(den, b.get_den_mpz_t());
    if (order == 0) {
        if (subtract) mpz_sub(num, num, b.get_num_mpz_t());
        else mpz_add(num, num, b.get_num_mpz_t());
    } else {
        thread_local BigInt scaled;
        const mp_bitcnt_t ea = mpz_scan1(den, 0);
        const mp_bitcnt_t eb = mpz_scan1(b.get_den_mpz_t(), 0);
        if (order < 0) {
            mpz_mul_2exp(num, num, eb - ea);
            mpz_set(den, b.get_den_mpz_t());
            if (subtract) mpz_sub(num, num, b.get_num_mpz_t());
            else mpz_add(num, num, b.get_num_mpz_t());
        } else {
            mpz_mul_2exp(scaled.get_mpz_t(), b.get_num_mpz_t(), ea - eb);
            if (subtract) mpz_sub(num, num, scaled.get_mpz_t());
            else mpz_add(num, num, scaled.get_mpz_t());
        }
    }
    // Only an even numerator over a nontrivial denominator can reduce.
    if (mpz_sgn(num) == 0) {
        mpz_set_ui(den, 1);
    } else if (mpz_even_p(num) && mpz_cmp_ui(den, 1) != 0) {
        const mp_bitcnt_t shift = std::min(mpz_scan1(num, 0), mpz_scan1(den, 0));
        mpz_fdiv_q_2exp(num, num, shift);
        mpz_fdiv_q_2exp(den, den, shift);
    }
}

}  // namespace

void add_to(Rational& a, const Rational& b) {
    if (is_dyadic(a) && is_dyadic(b)) dyadic_combine(a, b, false);
    else a += b;
}

void sub_from(Rational& a, const Rational& b) {
    if (is_dyadic(a) && is_dyadic(b)) dyadic_combine(a, b, true);
    else a -= b;
}

void wrap_unit(Rational& x) {
    static const Rational one(1);
    if (sgn(x) < 0) {
        if (cmp(x, -1) >= 0) add_to(x, one);
        else x -= Rational(floor(x));
    } else if (cmp(x, 1) >= 0) {
        if (cmp(x, 2) < 0) sub_from(x, one);
        else x -= Rational(floor(x));
    }
}

}  // namespace denjoy
