#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "denjoy/certified.hpp"
#include "denjoy/rational.hpp"

namespace denjoy {

/**
 * Continued fraction [0; a1, a2, ...] of an irrational number in (0, 1).
 *
 * Two shapes are supported:
 *  - quadratic irrationals: a finite prefix followed by a periodic tail that
 *    repeats forever, e.g. [0; 1, (2)] = 1/sqrt(2);
 *  - streams: only a finite prefix of some irrational's expansion is known.
 *    Anything that needs quotients past the prefix fails with
 *    DepthExhaustedError.
 *
 * Periodic expansions are stored canonically: the period is primitive (not a
 * power of a shorter block) and the prefix is as short as possible, so two
 * ContinuedFraction objects compare equal iff they denote the same number.
 */
class ContinuedFraction {
public:
    using Quotient = std::uint64_t;

    ContinuedFraction(std::vector<Quotient> prefix, std::vector<Quotient> periodic_tail);

    static ContinuedFraction periodic(std::vector<Quotient> prefix, std::vector<Quotient> tail);
    static ContinuedFraction stream(std::vector<Quotient> prefix);

    const std::vector<Quotient>& prefix() const noexcept { return prefix_; }
    // Empty for streams.
    const std::vector<Quotient>& periodic_tail() const noexcept { return tail_; }
    bool is_quadratic() const noexcept { return !tail_.empty(); }

    // Partial quotient a_i, i >= 1. Empty once a stream runs out.
    std::optional<Quotient> quotient(std::size_t i) const;
    // Number of known quotients; nullopt for periodic expansions (unbounded).
    std::optional<std::size_t> known_length() const;

    // Lexicographically least rotation of the period. Empty for streams.
    std::vector<Quotient> canonical_tail() const;

    // "[0; 1, 2, (2, 3)]".
    std::string to_string() const;

    friend bool operator==(const ContinuedFraction&, const ContinuedFraction&) = default;

private:
    std::vector<Quotient> prefix_;
    std::vector<Quotient> tail_;
};

ContinuedFraction parse_continued_fraction(std::string_view text);

// Least rotation of a nonempty block (Booth's algorithm).
std::vector<ContinuedFraction::Quotient> least_rotation(const std::vector<ContinuedFraction::Quotient>& block);

// Convergents p_1/q_1, ..., p_k/q_k (the trivial 0/1 is not included).
std::vector<Rational> convergents(const ContinuedFraction& cf, std::size_t k);

// Enclosure of the value with radius <= eps, bracketed by consecutive
// convergents.
CertifiedValue eval(const ContinuedFraction& cf, const Rational& eps);

// Enclosure of {shift + n*alpha} (fractional part) with radius <= eps. The
// integer part is removed exactly, so the radius does not grow with |n|.
CertifiedValue frac_shifted_multiple(const ContinuedFraction& cf, const Rational& shift, const BigInt& n,
                                     const Rational& eps);

// Enclosure of {n*alpha} with radius <= eps.
CertifiedValue frac_multiple(const ContinuedFraction& cf, const BigInt& n, const Rational& eps);

// b > 0 with ||k*alpha|| >= b for all 0 < |k| <= N, from the largest
// convergent denominator q_j <= N: b = 1/(q_j + q_{j+1}).
Rational separation_lower_bound(const ContinuedFraction& cf, std::uint64_t N);

}  // namespace denjoy
