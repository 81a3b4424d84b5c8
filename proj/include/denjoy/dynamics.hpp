#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "denjoy/denjoy_map.hpp"

namespace denjoy {

// 64-bit LCG used for every sampled run: state <- state * a + c (mod 2^64),
// starting from state = seed.
class Lcg64 {
public:
    static constexpr std::uint64_t kMultiplier = 6364136223846793005ULL;
    static constexpr std::uint64_t kIncrement = 1442695040888963407ULL;

    explicit Lcg64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ = state_ * kMultiplier + kIncrement;
        return state_;
    }
    // Exact dyadic in [0, 1) from the top 53 bits.
    Rational next_unit();
    // Uniform-ish integer in [lo, hi] (modulo reduction of next()).
    std::int64_t next_in(std::int64_t lo, std::int64_t hi);

private:
    std::uint64_t state_;
};

enum class SampleKind { gap, base, mixed };

struct SemiconjugacyReport {
    // Largest certified bound on ||P(f^k p) - rho^k P(p)|| over all samples
    // and 1 <= k <= iterations.
    Rational max_residual{0};
    Rational max_gap_residual{0};
    Rational max_base_residual{0};
    std::size_t gap_samples = 0;
    std::size_t base_samples = 0;
};

// Deterministic samples drawn from Lcg64(seed). Gap samples start at
// n in [-N, N - iterations], so iterations > 2N raises ResolvedDepthError.
SemiconjugacyReport semiconjugacy_check(const DenjoyMap& map, std::size_t sample_count, std::size_t iterations,
                                        std::uint64_t seed, SampleKind kind = SampleKind::mixed);

struct WanderingReport {
    bool pass = true;
    std::size_t images_checked = 0;
    std::size_t orbits = 0;
    std::optional<std::string> first_violation;
};

// Checks f^j(I_{i,0}) = I_{i,j} for |j| <= k (endpoints and midpoint) and
// that all resolved gaps are pairwise disjoint.
WanderingReport wandering_images(const DenjoyMap& map, std::int64_t k);

struct DensityReport {
    bool dense = false;
    std::size_t iterations_used = 0;
    std::size_t arc_count = 0;
    std::vector<std::size_t> unvisited;
};

// Index of the resolution-N' arc containing a Cantor point (gap endpoint or
// base point). Arc r runs from gap r to gap r + 1 in the resolution-N'
// circular order.
class ArcLocator {
public:
    ArcLocator(const DenjoyMap& map, std::uint64_t resolution);

    std::size_t arc_count() const noexcept { return arc_count_; }
    std::size_t locate(const BlownPoint& p) const;

private:
    std::size_t locate_angle(const CertifiedValue& x) const;
    std::size_t locate_orbit_point(const GapIndex& g) const;

    const DenjoyMap* map_;
    std::uint64_t resolution_;
    std::size_t arc_count_ = 0;
    std::vector<CertifiedValue> angles_;  // resolution-N' angles, sorted
    // For each position in map.sorted_gaps(): arc holding that gap if it is
    // deeper than N', and the arc right after it otherwise.
    std::vector<std::size_t> arc_after_;
    std::vector<bool> coarse_;
};

// Follows the forward orbit of `start` (a point of the Cantor set: a gap
// endpoint t in {0, 1} or a base point) and records visited arcs at
// resolution N'. ResolvedDepthError if N' > N.
DensityReport orbit_density(const DenjoyMap& map, const BlownPoint& start, std::uint64_t resolution,
                            std::size_t max_iter);

}  // namespace denjoy
