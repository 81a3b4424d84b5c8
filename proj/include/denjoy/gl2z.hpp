#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "denjoy/continued_fraction.hpp"
#include "denjoy/rational.hpp"

namespace denjoy {

// Integer matrix [[a, b], [c, d]] with determinant +1 or -1, acting on
// irrationals by x -> (a x + b) / (c x + d).
class IntegerMatrix2 {
public:
    IntegerMatrix2(BigInt a, BigInt b, BigInt c, BigInt d);

    static IntegerMatrix2 identity();

    const BigInt& a() const noexcept { return a_; }
    const BigInt& b() const noexcept { return b_; }
    const BigInt& c() const noexcept { return c_; }
    const BigInt& d() const noexcept { return d_; }
    int determinant() const;

    IntegerMatrix2 inverse() const;
    IntegerMatrix2 operator*(const IntegerMatrix2& rhs) const;

    // "[[a,b],[c,d]]"
    std::string to_string() const;

    friend bool operator==(const IntegerMatrix2&, const IntegerMatrix2&) = default;

private:
    BigInt a_, b_, c_, d_;
};

struct MobiusResult {
    ContinuedFraction value;
    // Maps the input exactly onto `value`: the requested matrix followed by
    // the sign flip and integer shift that bring the image into (0, 1).
    IntegerMatrix2 effective;
};

// Canonical continued fraction of the image (a alpha + b)/(c alpha + d),
// brought into (0, 1) by taking the absolute value and dropping the integer
// part. Requires a quadratic irrational (UnsupportedInputError otherwise).
ContinuedFraction mobius_apply(const IntegerMatrix2& m, const ContinuedFraction& cf);
MobiusResult mobius_apply_reduced(const IntegerMatrix2& m, const ContinuedFraction& cf);

enum class Equivalence { equivalent, not_equivalent, unknown_up_to_depth };

struct EquivalenceVerdict {
    Equivalence kind;
    // Shared canonical tail when `equivalent`.
    std::vector<ContinuedFraction::Quotient> tail_witness;
    std::string detail;
};

// Decides GL(2,Z)-equivalence. Exact for two quadratic irrationals (equal
// canonical tails); streams are only compared after deleting prefixes of
// length <= depth, which can never certify a verdict.
EquivalenceVerdict gl2z_equivalent(const ContinuedFraction& lhs, const ContinuedFraction& rhs, std::size_t depth);

std::string to_string(Equivalence kind);

// Brute-force search over all matrices with |entries| <= bound and
// determinant +-1, ordered by max-entry norm and then lexicographically with
// entries ranked 0, 1, -1, 2, -2, ... . Returns the first matrix whose
// certified image of `alpha` lies within `tol` of `target`.
std::optional<IntegerMatrix2> gl2z_matrix_search(const ContinuedFraction& alpha, const ContinuedFraction& target,
                                                 std::size_t bound, const Rational& tol);

}  // namespace denjoy
