#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "denjoy/certified.hpp"
#include "denjoy/continued_fraction.hpp"
#include "denjoy/rational.hpp"

namespace denjoy {

// Seed angle {offset + alpha_multiple * alpha}. The plain rational seed 0 is
// the point 1 of the unit circle.
struct OrbitSeed {
    Rational offset{0};
    std::int64_t alpha_multiple = 0;
    Rational weight{1};
};

// Gap (i, n) is the blow-up of x_{i,n} = {seed_i + n alpha} and has length
// w_i * 2^-|n|.
struct BlowupSchedule {
    ContinuedFraction alpha;
    std::vector<OrbitSeed> orbits;
};

// One orbit seeded at angle 0 with weight 1.
BlowupSchedule single_orbit_schedule(const ContinuedFraction& alpha);

struct GapIndex {
    std::size_t orbit_id = 0;
    std::int64_t n = 0;

    friend bool operator==(const GapIndex&, const GapIndex&) = default;
};

// Point of the inserted interval I_{i,n} at relative position t in [0, 1].
struct GapPoint {
    GapIndex index;
    Rational t;

    GapPoint(GapIndex index, Rational t);

    friend bool operator==(const GapPoint&, const GapPoint&) = default;
};

// Point off the blown-up orbits, stored by its angle on the base circle R/Z.
// section() checks that the enclosure avoids every resolved orbit point;
// rotation preserves the complement of the orbits, so images are not
// re-checked until blown_coordinate() needs the exact gap count.
struct BasePoint {
    CertifiedValue angle;
};

using BlownPoint = std::variant<GapPoint, BasePoint>;

struct ResolvedGap {
    GapIndex index;
    CertifiedValue angle;
    Rational length;
    // Total length of the resolved gaps whose base point precedes this one.
    Rational preceding_length;
};

/**
 * Denjoy homeomorphism f_alpha of the blown-up circle, with the gaps
 * |n| <= N resolved explicitly.
 *
 * Blown coordinates measure arc length from the point over angle 0, on a
 * circle of circumference 1 + L where L = 3 * sum(w_i). A base angle x sits at
 * x + (resolved gap lengths over [0, x)) + (unresolved mass over [0, x)); the
 * unresolved mass is only known to lie in [0, tail_bound()].
 */
class DenjoyMap {
public:
    DenjoyMap(BlowupSchedule schedule, std::uint64_t depth);

    const BlowupSchedule& schedule() const noexcept { return schedule_; }
    const ContinuedFraction& alpha() const noexcept { return schedule_.alpha; }
    std::uint64_t depth() const noexcept { return depth_; }
    std::size_t orbit_count() const noexcept { return schedule_.orbits.size(); }

    // sum_i 2 w_i 2^-N
    const Rational& tail_bound() const noexcept { return tail_bound_; }
    // sum_i 3 w_i
    const Rational& inserted_length() const noexcept { return inserted_length_; }
    Rational circumference() const { return 1 + inserted_length_; }

    // Enclosure of alpha used for base-point rotation (dyadic, tiny radius).
    const CertifiedValue& alpha_enclosure() const noexcept { return alpha_enclosure_; }
    // Radius scale of every enclosure the map produces.
    Rational working_precision() const { return pow2(-static_cast<long>(precision_bits_)); }
    unsigned precision_bits() const noexcept { return precision_bits_; }

    // Resolved gaps sorted by base angle in [0, 1).
    const std::vector<ResolvedGap>& sorted_gaps() const noexcept { return sorted_; }
    // Position of gap `index` in sorted_gaps(); throws ResolvedDepthError if
    // |n| > N.
    std::size_t sorted_position(const GapIndex& index) const;
    bool is_resolved(const GapIndex& index) const;

    Rational gap_length(const GapIndex& index) const;
    // Enclosure of x_{i,n}, any n.
    CertifiedValue orbit_angle(const GapIndex& index) const;
    CertifiedValue orbit_angle(const GapIndex& index, const Rational& eps) const;

    // Index in sorted_gaps() of the first resolved gap whose angle is not
    // below x (sorted_gaps().size() if none). Throws
    // UndecidableComparisonError when x overlaps a resolved angle, except
    // for exact equality.
    std::size_t count_below(const CertifiedValue& x) const;

    void validate(const GapIndex& index) const;

private:
    BlowupSchedule schedule_;
    std::uint64_t depth_;
    Rational tail_bound_;
    Rational inserted_length_;
    unsigned precision_bits_ = 0;
    CertifiedValue alpha_enclosure_;
    std::vector<ResolvedGap> sorted_;
    // sorted_index_[orbit][n + N]
    std::vector<std::vector<std::size_t>> sorted_index_;
};

// Validates weights (> 0), seed orbits (distinct) and N (>= 0).
DenjoyMap build_map(const BlowupSchedule& schedule, std::uint64_t depth);

// Resolved gap lengths over base points in [0, x), plus [0, tail_bound] for
// the unresolved gaps. x must lie in [0, 1).
CertifiedValue insertion_offset(const DenjoyMap& map, const CertifiedValue& x);

// Projection P_alpha onto the base circle.
CertifiedValue collapse(const DenjoyMap& map, const BlownPoint& p);

// Base point over x; OrbitHitError when x may be a resolved orbit point.
BlownPoint section(const DenjoyMap& map, const CertifiedValue& x);

// Coordinate on the blown-up circle, in [0, circumference). OrbitHitError
// when a base point's enclosure is too wide to place it among the gaps.
CertifiedValue blown_coordinate(const DenjoyMap& map, const BlownPoint& p);

BlownPoint denjoy_eval(const DenjoyMap& map, const BlownPoint& p);
// Same as above; reuses the storage of a base point.
BlownPoint denjoy_eval(const DenjoyMap& map, BlownPoint&& p);
BlownPoint denjoy_eval_inverse(const DenjoyMap& map, const BlownPoint& p);
// k-fold composition (inverse for k < 0).
BlownPoint denjoy_iterate(const DenjoyMap& map, const BlownPoint& p, std::int64_t k);

// Resolved gaps in increasing angle order, starting from angle 0.
std::vector<GapIndex> gap_circular_order(const DenjoyMap& map);

struct CantorArc {
    // Gaps bounding the arc: it runs from the right end of `after` to the left
    // end of `before`.
    GapIndex after;
    GapIndex before;
    CertifiedValue left;
    // May exceed the circumference for the arc that wraps past 0.
    CertifiedValue right;
    CertifiedValue length;
};

struct CantorApprox {
    std::uint64_t resolution = 0;
    std::vector<CantorArc> arcs;
    // Exact: 1 + tail_bound, since every unresolved gap lies inside an arc.
    Rational total_length;
    Rational resolved_gap_length;
};

CantorApprox cantor_approx(const DenjoyMap& map);

}  // namespace denjoy
