#include "denjoy/gl2z.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "denjoy/certified.hpp"
#include "denjoy/errors.hpp"
#include "denjoy/quadratic_surd.hpp"

namespace denjoy {

IntegerMatrix2::IntegerMatrix2(BigInt a, BigInt b, BigInt c, BigInt d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
    BigInt det = a_ * d_ - b_ * c_;
    if (det != 1 && det != -1) {
        throw std::invalid_argument("matrix " + to_string() + " has determinant " + det.get_str() + ", expected +-1");
    }
}

IntegerMatrix2 IntegerMatrix2::identity() { return IntegerMatrix2(1, 0, 0, 1); }

int IntegerMatrix2::determinant() const {
    BigInt det = a_ * d_ - b_ * c_;
    return det > 0 ? 1 : -1;
}

IntegerMatrix2 IntegerMatrix2::inverse() const {
    // Adjugate divided by the determinant (which is its own inverse).
    const int det = determinant();
    return IntegerMatrix2(det * d_, -det * b_, -det * c_, det * a_);
}

IntegerMatrix2 IntegerMatrix2::operator*(const IntegerMatrix2& rhs) const {
    return IntegerMatrix2(a_ * rhs.a_ + b_ * rhs.c_, a_ * rhs.b_ + b_ * rhs.d_, c_ * rhs.a_ + d_ * rhs.c_,
                          c_ * rhs.b_ + d_ * rhs.d_);
}

std::string IntegerMatrix2::to_string() const {
    std::ostringstream os;
    os << "[[" << a_ << ',' << b_ << "],[" << c_ << ',' << d_ << "]]";
    return os.str();
}

MobiusResult mobius_apply_reduced(const IntegerMatrix2& m, const ContinuedFraction& cf) {
    if (!cf.is_quadratic()) {
        throw UnsupportedInputError("mobius_apply needs a quadratic irrational, got stream " + cf.to_string());
    }
    QuadraticSurd x = QuadraticSurd::from_continued_fraction(cf).mobius(m);
    IntegerMatrix2 effective = m;
    if (x.sign() < 0) {
        const IntegerMatrix2 flip(-1, 0, 0, 1);
        x = x.mobius(flip);
        effective = flip * effective;
    }
    auto [integer_part, fractional] = x.expand();
    effective = IntegerMatrix2(1, -integer_part, 0, 1) * effective;
    return {std::move(fractional), std::move(effective)};
}

ContinuedFraction mobius_apply(const IntegerMatrix2& m, const ContinuedFraction& cf) {
    return mobius_apply_reduced(m, cf).value;
}

namespace {

using Quotient = ContinuedFraction::Quotient;

// Known quotients a_1..a_limit (fewer for a short stream).
std::vector<Quotient> known_quotients(const ContinuedFraction& cf, std::size_t limit) {
    std::vector<Quotient> out;
    for (std::size_t i = 1; i <= limit; ++i) {
        auto a = cf.quotient(i);
        if (!a) break;
        out.push_back(*a);
    }
    return out;
}

std::string join(const std::vector<Quotient>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
    return os.str();
}

}  // namespace

EquivalenceVerdict gl2z_equivalent(const ContinuedFraction& lhs, const ContinuedFraction& rhs, std::size_t depth) {
    if (depth == 0) throw std::invalid_argument("gl2z_equivalent: depth must be >= 1");
    if (lhs.is_quadratic() && rhs.is_quadratic()) {
        auto lt = lhs.canonical_tail();
        auto rt = rhs.canonical_tail();
        if (lt == rt) return {Equivalence::equivalent, lt, "common periodic tail (" + join(lt) + ")"};
        return {Equivalence::not_equivalent, {},
                "periodic tails (" + join(lt) + ") and (" + join(rt) + ") differ"};
    }

    // At least one stream: only finitely many quotients are known, so no
    // statement about the tails is certain. Report whether some alignment
    // after deleting prefixes of length <= depth is consistent.
    const std::size_t horizon = depth + std::max(lhs.known_length().value_or(0), rhs.known_length().value_or(0)) + 1;
    auto l = known_quotients(lhs, horizon);
    auto r = known_quotients(rhs, horizon);
    for (std::size_t i = 0; i <= depth && i <= l.size(); ++i) {
        for (std::size_t j = 0; j <= depth && j <= r.size(); ++j) {
            std::size_t overlap = std::min(l.size() - i, r.size() - j);
            if (overlap == 0) continue;
            if (std::equal(l.begin() + static_cast<std::ptrdiff_t>(i),
                           l.begin() + static_cast<std::ptrdiff_t>(i + overlap),
                           r.begin() + static_cast<std::ptrdiff_t>(j))) {
                std::ostringstream os;
                os << "known quotients agree after deleting " << i << " and " << j << " leading terms ("
                   << overlap << " compared); tails beyond the known prefix are undetermined";
                return {Equivalence::unknown_up_to_depth, {}, os.str()};
            }
        }
    }
    return {Equivalence::unknown_up_to_depth, {},
            "no alignment with deleted prefixes of length <= " + std::to_string(depth) +
                " matches the known quotients; later terms are undetermined"};
}

std::string to_string(Equivalence kind) {
    switch (kind) {
        case Equivalence::equivalent: return "Equivalent";
        case Equivalence::not_equivalent: return "NotEquivalent";
        case Equivalence::unknown_up_to_depth: return "UnknownUpToDepth";
    }
    return "?";
}

namespace {

// 0, 1, -1, 2, -2, ...
long entry_at_rank(long rank) { return rank % 2 == 1 ? (rank + 1) / 2 : -(rank / 2); }

enum class Match { accept, reject, refine };

// Certified image of [lo, hi] under x -> (a x + b)/(c x + d); nullopt when the
// pole lies in the interval.
std::optional<CertifiedValue> image(long a, long b, long c, long d, const CertifiedValue& x) {
    const Rational lo = x.lower();
    const Rational hi = x.upper();
    auto den = [&](const Rational& t) -> Rational { return Rational(c) * t + d; };
    Rational den_lo = den(lo);
    Rational den_hi = den(hi);
    if (sgn(den_lo) == 0 || sgn(den_hi) == 0 || sgn(den_lo) != sgn(den_hi)) return std::nullopt;
    Rational f_lo = (Rational(a) * lo + b) / den_lo;
    Rational f_hi = (Rational(a) * hi + b) / den_hi;
    if (f_hi < f_lo) std::swap(f_lo, f_hi);
    return CertifiedValue::from_bounds(f_lo, f_hi);
}

Match classify_match(long a, long b, long c, long d, const CertifiedValue& x, const CertifiedValue& target,
                     const Rational& tol) {
    auto img = image(a, b, c, d, x);
    if (!img) return Match::refine;
    Rational far = std::max(abs(img->upper() - target.lower()), abs(target.upper() - img->lower()));
    if (far <= tol) return Match::accept;
    Rational gap = std::max(img->lower() - target.upper(), target.lower() - img->upper());
    if (gap > tol) return Match::reject;
    return Match::refine;
}

}  // namespace

std::optional<IntegerMatrix2> gl2z_matrix_search(const ContinuedFraction& alpha, const ContinuedFraction& target,
                                                 std::size_t bound, const Rational& tol) {
    if (bound == 0) throw std::invalid_argument("gl2z_matrix_search: bound must be >= 1");
    if (tol <= 0) throw std::invalid_argument("gl2z_matrix_search: tol must be positive");

    constexpr int kMaxRefinements = 6;
    std::vector<CertifiedValue> alpha_at;
    std::vector<CertifiedValue> target_at;
    Rational eps = tol / 4;
    alpha_at.push_back(eval(alpha, eps));
    target_at.push_back(eval(target, eps));
    for (int i = 1; i <= kMaxRefinements; ++i) {
        eps /= BigInt(1) << 16;
        try {
            CertifiedValue x = eval(alpha, eps);
            CertifiedValue t = eval(target, eps);
            alpha_at.push_back(std::move(x));
            target_at.push_back(std::move(t));
        } catch (const DepthExhaustedError&) {
            break;  // a stream cannot refine further
        }
    }

    const long b_max = static_cast<long>(bound);
    const long ranks = 2 * b_max + 1;
    for (long level = 1; level <= b_max; ++level) {
        for (long ra = 0; ra < ranks; ++ra) {
            const long a = entry_at_rank(ra);
            for (long rb = 0; rb < ranks; ++rb) {
                const long b = entry_at_rank(rb);
                for (long rc = 0; rc < ranks; ++rc) {
                    const long c = entry_at_rank(rc);
                    for (long rd = 0; rd < ranks; ++rd) {
                        const long d = entry_at_rank(rd);
                        if (std::max({std::labs(a), std::labs(b), std::labs(c), std::labs(d)}) != level) continue;
                        const long det = a * d - b * c;
                        if (det != 1 && det != -1) continue;
                        for (std::size_t i = 0; i < alpha_at.size(); ++i) {
                            Match m = classify_match(a, b, c, d, alpha_at[i], target_at[i], tol);
                            if (m == Match::accept) return IntegerMatrix2(a, b, c, d);
                            if (m == Match::reject) break;
                        }
                    }
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace denjoy
