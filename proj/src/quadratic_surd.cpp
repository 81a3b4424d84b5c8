#include "denjoy/quadratic_surd.hpp"

#include <map>
#include <stdexcept>

#include "denjoy/errors.hpp"
#include "denjoy/gl2z.hpp"

namespace denjoy {

namespace {

BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// floor(r * sqrt(d)) for r != 0 and d not a perfect square.
BigInt floor_scaled_root(const BigInt& r, const BigInt& d) {
    BigInt s = isqrt(BigInt(r * r * d));
    return r > 0 ? s : BigInt(-s - 1);
}

// floor((P + sqrt(D)) / Q) for D not a perfect square, Q != 0.
BigInt floor_standard(const BigInt& P, const BigInt& D, const BigInt& Q) {
    BigInt f = isqrt(D);
    BigInt num = P + f;
    BigInt out;
    if (Q > 0) {
        mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
    } else {
        // (P + s)/Q = (-P - s)/(-Q) and floor(-s) = -f - 1.
        BigInt neg_num = -P - f - 1;
        BigInt neg_q = -Q;
        mpz_fdiv_q(out.get_mpz_t(), neg_num.get_mpz_t(), neg_q.get_mpz_t());
    }
    return out;
}

}  // namespace

QuadraticSurd::QuadraticSurd(BigInt p, BigInt r, BigInt q, BigInt d)
    : p_(std::move(p)), r_(std::move(r)), q_(std::move(q)), d_(std::move(d)) {
    if (q_ == 0) throw std::invalid_argument("quadratic surd with zero denominator");
    if (r_ == 0) throw std::invalid_argument("quadratic surd must be irrational (r != 0)");
    if (d_ <= 1 || is_perfect_square(d_)) throw std::invalid_argument("quadratic surd radicand must be a non-square > 1");
    normalize();
}

void QuadraticSurd::normalize() {
    if (q_ < 0) {
        p_ = -p_;
        r_ = -r_;
        q_ = -q_;
    }
    BigInt g = gcd(gcd(p_, r_), q_);
    if (g > 1) {
        p_ /= g;
        r_ /= g;
        q_ /= g;
    }
}

QuadraticSurd QuadraticSurd::from_continued_fraction(const ContinuedFraction& cf) {
    if (!cf.is_quadratic()) {
        throw UnsupportedInputError("continued fraction " + cf.to_string() + " has no periodic tail");
    }
    // Purely periodic part beta = [b1; b2, ..., bm, beta] > 1.
    BigInt h_prev = 1, k_prev = 0, h = 0, k = 1;
    bool first = true;
    for (auto b : cf.periodic_tail()) {
        BigInt bb = static_cast<unsigned long>(b);
        if (first) {
            h_prev = 1;
            k_prev = 0;
            h = bb;
            k = 1;
            first = false;
            continue;
        }
        BigInt h_next = bb * h + h_prev;
        BigInt k_next = bb * k + k_prev;
        h_prev = std::move(h);
        k_prev = std::move(k);
        h = std::move(h_next);
        k = std::move(k_next);
    }
    // beta = (h beta + h_prev)/(k beta + k_prev)
    //   =>  k beta^2 + (k_prev - h) beta - h_prev = 0.
    BigInt lin = h - k_prev;
    BigInt disc = lin * lin + 4 * k * h_prev;
    QuadraticSurd beta(lin, BigInt(1), BigInt(2 * k), disc);

    // alpha = [0; a1, ..., an, beta] = (P beta + P')/(Q beta + Q').
    BigInt P_prev = 1, Q_prev = 0, P = 0, Q = 1;
    for (auto a : cf.prefix()) {
        BigInt aa = static_cast<unsigned long>(a);
        BigInt P_next = aa * P + P_prev;
        BigInt Q_next = aa * Q + Q_prev;
        P_prev = std::move(P);
        Q_prev = std::move(Q);
        P = std::move(P_next);
        Q = std::move(Q_next);
    }
    return beta.mobius(IntegerMatrix2(P, P_prev, Q, Q_prev));
}

int QuadraticSurd::sign() const {
    // q > 0, so the sign is that of p + r sqrt(d).
    const int sp = sgn(p_);
    const int sr = sgn(r_);
    if (sp >= 0 && sr > 0) return 1;
    if (sp <= 0 && sr < 0) return -1;
    BigInt lhs = p_ * p_;
    BigInt rhs = r_ * r_ * d_;
    // p and r sqrt(d) have opposite signs: the larger magnitude wins.
    return lhs > rhs ? sp : sr;
}

BigInt QuadraticSurd::floor() const {
    BigInt f = floor_scaled_root(r_, d_);
    BigInt num = p_ + f;
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), q_.get_mpz_t());
    return out;
}

QuadraticSurd QuadraticSurd::operator-() const { return QuadraticSurd(-p_, -r_, q_, d_); }

QuadraticSurd QuadraticSurd::operator+(const BigInt& k) const { return QuadraticSurd(p_ + k * q_, r_, q_, d_); }

QuadraticSurd QuadraticSurd::operator-(const BigInt& k) const { return QuadraticSurd(p_ - k * q_, r_, q_, d_); }

QuadraticSurd QuadraticSurd::mobius(const IntegerMatrix2& m) const {
    // (a x + b)/(c x + e) with x = (p + r s)/q, s = sqrt(d):
    //   = (A + B s)/(C + E s) = ((A C - B E d) + (B C - A E) s)/(C^2 - E^2 d)
    BigInt A = m.a() * p_ + m.b() * q_;
    BigInt B = m.a() * r_;
    BigInt C = m.c() * p_ + m.d() * q_;
    BigInt E = m.c() * r_;
    BigInt num_p = A * C - B * E * d_;
    BigInt num_r = B * C - A * E;
    BigInt den = C * C - E * E * d_;
    return QuadraticSurd(num_p, num_r, den, d_);
}

int QuadraticSurd::compare(const QuadraticSurd& other) const {
    if (d_ != other.d_) throw std::invalid_argument("comparing quadratic surds with different radicands");
    // x - y = ((p1 q2 - p2 q1) + (r1 q2 - r2 q1) s) / (q1 q2)
    BigInt dp = p_ * other.q_ - other.p_ * q_;
    BigInt dr = r_ * other.q_ - other.r_ * q_;
    if (dr == 0) return sgn(dp);
    return QuadraticSurd(dp, dr, q_ * other.q_, d_).sign();
}

std::pair<BigInt, ContinuedFraction> QuadraticSurd::expand() const {
    // Standard form (P + sqrt(D))/Q with Q | D - P^2.
    BigInt P = r_ > 0 ? p_ : BigInt(-p_);
    BigInt Q = r_ > 0 ? q_ : BigInt(-q_);
    BigInt D = r_ * r_ * d_;
    BigInt rem = D - P * P;
    if (!mpz_divisible_p(rem.get_mpz_t(), Q.get_mpz_t())) {
        BigInt absq = Q < 0 ? BigInt(-Q) : Q;
        P *= absq;
        D *= Q * Q;
        Q *= absq;
    }

    std::vector<BigInt> terms;
    std::map<std::pair<BigInt, BigInt>, std::size_t> seen;
    std::size_t period_start = 0;
    for (std::size_t i = 0;; ++i) {
        auto [it, inserted] = seen.emplace(std::make_pair(P, Q), i);
        if (!inserted) {
            period_start = it->second;
            break;
        }
        if (i > 1000000) throw Error("quadratic surd expansion did not become periodic");
        BigInt a = floor_standard(P, D, Q);
        terms.push_back(a);
        P = a * Q - P;
        Q = (D - P * P) / Q;
    }

    auto as_quotient = [](const BigInt& a) {
        if (a < 1 || !a.fits_ulong_p()) throw Error("partial quotient out of range");
        return static_cast<ContinuedFraction::Quotient>(a.get_ui());
    };
    std::vector<ContinuedFraction::Quotient> prefix;
    std::vector<ContinuedFraction::Quotient> tail;
    if (period_start == 0) {
        // Purely periodic from a_0: the fractional part starts one step in.
        for (std::size_t i = 1; i < terms.size(); ++i) tail.push_back(as_quotient(terms[i]));
        tail.push_back(as_quotient(terms[0]));
    } else {
        for (std::size_t i = 1; i < period_start; ++i) prefix.push_back(as_quotient(terms[i]));
        for (std::size_t i = period_start; i < terms.size(); ++i) tail.push_back(as_quotient(terms[i]));
    }
    return {terms.front(), ContinuedFraction(std::move(prefix), std::move(tail))};
}

CertifiedValue QuadraticSurd::enclose(const Rational& eps) const {
    auto [integer_part, fractional] = expand();
    return eval(fractional, eps) + Rational(integer_part);
}

}  // namespace denjoy
