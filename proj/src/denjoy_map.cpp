#include "denjoy/denjoy_map.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "denjoy/errors.hpp"

namespace denjoy {

namespace {

constexpr unsigned kMinPrecisionBits = 100;
// Extra bits for alpha itself, so many rotation steps stay below the grid.
constexpr unsigned kAlphaGuardBits = 16;

std::string describe(const GapIndex& g) {
    return "(" + std::to_string(g.orbit_id) + ", " + std::to_string(g.n) + ")";
}

BigInt lcm(const BigInt& a, const BigInt& b) {
    BigInt out;
    mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return out;
}

std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

// Reduce an enclosure of a real into [0, 1). Throws when it straddles an
// integer.
CertifiedValue reduce_mod_one(CertifiedValue x) {
    static const Rational one(1);
    const Rational& mid = x.midpoint();
    if (sgn(mid) < 0) x += cmp(mid, -1) >= 0 ? one : Rational(-floor(mid));
    else if (cmp(mid, 1) >= 0) x -= cmp(mid, 2) < 0 ? one : Rational(floor(mid));
    const Rational& m = x.midpoint();
    thread_local Rational top;
    top = m;
    add_to(top, x.radius());
    if (m < x.radius() || cmp(top, 1) >= 0) {
        throw UndecidableComparisonError("angle enclosure " + to_string(x.lower()) + " .. " + to_string(x.upper()) +
                                         " straddles 0 mod 1");
    }
    return x;
}

void check_angle_range(const CertifiedValue& x) {
    if (x.midpoint() < 0 || x.midpoint() >= 1) {
        throw std::invalid_argument("angle " + to_string(x.midpoint()) + " is outside [0, 1)");
    }
    if (x.lower() < 0 || x.upper() >= 1) {
        throw UndecidableComparisonError("angle enclosure straddles 0 mod 1");
    }
}

}  // namespace

BlowupSchedule single_orbit_schedule(const ContinuedFraction& alpha) { return {alpha, {OrbitSeed{}}}; }

GapPoint::GapPoint(GapIndex index_, Rational t_) : index(index_), t(std::move(t_)) {
    if (t < 0 || t > 1) throw std::invalid_argument("gap coordinate t = " + to_string(t) + " is outside [0, 1]");
}

DenjoyMap::DenjoyMap(BlowupSchedule schedule, std::uint64_t depth) : schedule_(std::move(schedule)), depth_(depth) {
    if (schedule_.orbits.empty()) throw std::invalid_argument("blow-up schedule needs at least one orbit");
    if (depth_ > (std::uint64_t{1} << 40)) throw std::invalid_argument("truncation depth too large");
    Rational weight_sum = 0;
    for (const auto& seed : schedule_.orbits) {
        if (seed.weight <= 0) throw std::invalid_argument("orbit weight must be positive, got " + to_string(seed.weight));
        weight_sum += seed.weight;
    }
    // s + j alpha and s' + j' alpha share a rotation orbit iff s - s' is an
    // integer, since alpha is irrational.
    for (std::size_t i = 0; i < schedule_.orbits.size(); ++i) {
        for (std::size_t k = i + 1; k < schedule_.orbits.size(); ++k) {
            Rational diff = schedule_.orbits[i].offset - schedule_.orbits[k].offset;
            if (diff.get_den() == 1) {
                throw OrbitCollisionError("orbit seeds " + std::to_string(i) + " and " + std::to_string(k) +
                                          " lie on the same rotation orbit");
            }
        }
    }
    inserted_length_ = 3 * weight_sum;
    tail_bound_ = 2 * weight_sum * pow2(-static_cast<long>(depth_));

    // Any two resolved points differ by u/V + k alpha with |k| <= K, and
    // ||u/V + k alpha|| >= ||V k alpha|| / V.
    BigInt denominators = 1;
    std::int64_t j_min = schedule_.orbits.front().alpha_multiple;
    std::int64_t j_max = j_min;
    for (const auto& seed : schedule_.orbits) {
        denominators = lcm(denominators, seed.offset.get_den());
        j_min = std::min(j_min, seed.alpha_multiple);
        j_max = std::max(j_max, seed.alpha_multiple);
    }
    const std::uint64_t spread = 2 * depth_ + static_cast<std::uint64_t>(j_max - j_min);
    if (!denominators.fits_ulong_p()) throw std::invalid_argument("seed denominators too large");
    const std::uint64_t scaled = std::max<std::uint64_t>(1, spread * denominators.get_ui());
    const Rational separation = separation_lower_bound(schedule_.alpha, scaled) / Rational(denominators);
    // 2^-P <= separation / 16
    precision_bits_ = kMinPrecisionBits;
    while (pow2(-static_cast<long>(precision_bits_)) * 16 > separation) ++precision_bits_;

    const unsigned alpha_bits = precision_bits_ + kAlphaGuardBits;
    alpha_enclosure_ = eval(schedule_.alpha, pow2(-static_cast<long>(alpha_bits))).rounded_to_dyadic(alpha_bits);

    const auto width = static_cast<std::int64_t>(depth_);
    for (std::size_t i = 0; i < schedule_.orbits.size(); ++i) {
        for (std::int64_t n = -width; n <= width; ++n) {
            GapIndex g{i, n};
            sorted_.push_back({g, orbit_angle(g, working_precision()), gap_length(g), Rational(0)});
        }
    }
    std::sort(sorted_.begin(), sorted_.end(), [](const ResolvedGap& a, const ResolvedGap& b) {
        return a.angle.midpoint() < b.angle.midpoint();
    });
    Rational running = 0;
    for (std::size_t s = 0; s < sorted_.size(); ++s) {
        if (s > 0 && !certainly_less(sorted_[s - 1].angle, sorted_[s].angle)) {
            throw UndecidableComparisonError("could not separate orbit points " + describe(sorted_[s - 1].index) +
                                             " and " + describe(sorted_[s].index));
        }
        sorted_[s].preceding_length = running;
        running += sorted_[s].length;
    }

    sorted_index_.assign(schedule_.orbits.size(), std::vector<std::size_t>(2 * depth_ + 1));
    for (std::size_t s = 0; s < sorted_.size(); ++s) {
        const GapIndex& g = sorted_[s].index;
        sorted_index_[g.orbit_id][static_cast<std::size_t>(g.n + width)] = s;
    }
}

void DenjoyMap::validate(const GapIndex& index) const {
    if (index.orbit_id >= schedule_.orbits.size()) {
        throw std::invalid_argument("gap " + describe(index) + " refers to a missing orbit");
    }
}

bool DenjoyMap::is_resolved(const GapIndex& index) const {
    validate(index);
    return static_cast<std::uint64_t>(abs64(index.n)) <= depth_;
}

std::size_t DenjoyMap::sorted_position(const GapIndex& index) const {
    if (!is_resolved(index)) {
        throw ResolvedDepthError("gap " + describe(index) + " is beyond the resolved depth " + std::to_string(depth_),
                                 index.n);
    }
    return sorted_index_[index.orbit_id][static_cast<std::size_t>(index.n + static_cast<std::int64_t>(depth_))];
}

Rational DenjoyMap::gap_length(const GapIndex& index) const {
    validate(index);
    return schedule_.orbits[index.orbit_id].weight * pow2(-abs64(index.n));
}

CertifiedValue DenjoyMap::orbit_angle(const GapIndex& index, const Rational& eps) const {
    validate(index);
    const OrbitSeed& seed = schedule_.orbits[index.orbit_id];
    BigInt multiple = static_cast<long>(seed.alpha_multiple);
    multiple += static_cast<long>(index.n);
    CertifiedValue angle = frac_shifted_multiple(schedule_.alpha, seed.offset, multiple, eps);
    if (angle.is_exact()) return angle;
    return angle.rounded_to_dyadic(precision_bits_ + 2);
}

CertifiedValue DenjoyMap::orbit_angle(const GapIndex& index) const {
    if (!sorted_index_.empty() && is_resolved(index)) return sorted_[sorted_position(index)].angle;
    return orbit_angle(index, working_precision());
}

std::size_t DenjoyMap::count_below(const CertifiedValue& x) const {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), x.midpoint(),
                               [](const ResolvedGap& g, const Rational& m) { return g.angle.midpoint() < m; });
    const auto k = static_cast<std::size_t>(it - sorted_.begin());
    if (k > 0 && !certainly_less(sorted_[k - 1].angle, x)) {
        throw UndecidableComparisonError("angle may coincide with orbit point " + describe(sorted_[k - 1].index));
    }
    if (k < sorted_.size()) {
        const CertifiedValue& a = sorted_[k].angle;
        const bool equal = a.is_exact() && x.is_exact() && a.midpoint() == x.midpoint();
        if (!equal && !certainly_less(x, a)) {
            throw UndecidableComparisonError("angle may coincide with orbit point " + describe(sorted_[k].index));
        }
    }
    return k;
}

DenjoyMap build_map(const BlowupSchedule& schedule, std::uint64_t depth) { return DenjoyMap(schedule, depth); }

CertifiedValue insertion_offset(const DenjoyMap& map, const CertifiedValue& x) {
    check_angle_range(x);
    // Nothing lies in [0, 0).
    if (x.is_exact() && x.midpoint() == 0) return CertifiedValue::exact(Rational(0));
    const std::size_t k = map.count_below(x);
    Rational resolved = 0;
    if (k > 0) {
        const ResolvedGap& g = map.sorted_gaps()[k - 1];
        resolved = g.preceding_length + g.length;
    }
    return CertifiedValue::from_bounds(resolved, resolved + map.tail_bound());
}

namespace {

CertifiedValue base_position(const DenjoyMap& map, const CertifiedValue& angle) {
    try {
        return angle + insertion_offset(map, angle);
    } catch (const UndecidableComparisonError& e) {
        throw OrbitHitError(std::string("base point may lie on a resolved orbit: ") + e.what());
    }
}

void check_off_seeds(const DenjoyMap& map, const CertifiedValue& x) {
    if (!x.is_exact()) return;
    for (std::size_t i = 0; i < map.orbit_count(); ++i) {
        const OrbitSeed& seed = map.schedule().orbits[i];
        Rational s = seed.offset - Rational(floor(seed.offset));
        if (s == x.midpoint()) {
            throw OrbitHitError("angle " + to_string(s) + " is the orbit point x_{" + std::to_string(i) + "," +
                                std::to_string(-seed.alpha_multiple) + "}");
        }
    }
}

}  // namespace

CertifiedValue collapse(const DenjoyMap& map, const BlownPoint& p) {
    if (const auto* g = std::get_if<GapPoint>(&p)) return map.orbit_angle(g->index);
    return std::get<BasePoint>(p).angle;
}

BlownPoint section(const DenjoyMap& map, const CertifiedValue& x) {
    check_angle_range(x);
    check_off_seeds(map, x);
    base_position(map, x);
    return BasePoint{x};
}

CertifiedValue blown_coordinate(const DenjoyMap& map, const BlownPoint& p) {
    if (const auto* b = std::get_if<BasePoint>(&p)) return base_position(map, b->angle);
    const GapPoint& g = std::get<GapPoint>(p);
    const ResolvedGap& r = map.sorted_gaps()[map.sorted_position(g.index)];
    const Rational half_tail = map.tail_bound() / 2;
    return CertifiedValue(r.angle.midpoint() + r.preceding_length + g.t * r.length + half_tail,
                          r.angle.radius() + half_tail);
}

namespace {

BlownPoint shift_gap(const DenjoyMap& map, const GapPoint& g, std::int64_t k) {
    map.validate(g.index);
    const auto limit = static_cast<std::int64_t>(map.depth());
    for (std::int64_t n : {g.index.n, g.index.n + k}) {
        if (abs64(n) > limit) {
            throw ResolvedDepthError("gap index n = " + std::to_string(n) + " leaves the resolved range |n| <= " +
                                         std::to_string(limit),
                                     n);
        }
    }
    return GapPoint({g.index.orbit_id, g.index.n + k}, g.t);
}

BlownPoint rotate_base(const DenjoyMap& map, CertifiedValue moved, std::int64_t k) {
    const unsigned grid = map.precision_bits() + kAlphaGuardBits;
    if (k == 1) moved += map.alpha_enclosure();
    else if (k == -1) moved -= map.alpha_enclosure();
    else moved += map.alpha_enclosure().scaled(Rational(static_cast<long>(k)));
    moved = reduce_mod_one(std::move(moved));
    // Sums of grid dyadics stay on the grid; only foreign inputs get rounded.
    if (mpz_sizeinbase(moved.midpoint().get_den_mpz_t(), 2) > grid + 1 ||
        mpz_sizeinbase(moved.radius().get_den_mpz_t(), 2) > grid + 1) {
        moved = moved.rounded_to_dyadic(grid);
    }
    return BasePoint{std::move(moved)};
}

}  // namespace

BlownPoint denjoy_eval(const DenjoyMap& map, const BlownPoint& p) { return denjoy_iterate(map, p, 1); }

BlownPoint denjoy_eval(const DenjoyMap& map, BlownPoint&& p) {
    if (auto* b = std::get_if<BasePoint>(&p)) return rotate_base(map, std::move(b->angle), 1);
    return denjoy_iterate(map, p, 1);
}

BlownPoint denjoy_eval_inverse(const DenjoyMap& map, const BlownPoint& p) { return denjoy_iterate(map, p, -1); }

BlownPoint denjoy_iterate(const DenjoyMap& map, const BlownPoint& p, std::int64_t k) {
    if (const auto* g = std::get_if<GapPoint>(&p)) return shift_gap(map, *g, k);
    const BasePoint& b = std::get<BasePoint>(p);
    if (k == 0) return b;
    return rotate_base(map, b.angle, k);
}

std::vector<GapIndex> gap_circular_order(const DenjoyMap& map) {
    std::vector<GapIndex> out;
    out.reserve(map.sorted_gaps().size());
    for (const auto& g : map.sorted_gaps()) out.push_back(g.index);
    return out;
}

CantorApprox cantor_approx(const DenjoyMap& map) {
    const auto& gaps = map.sorted_gaps();
    const Rational half_tail = map.tail_bound() / 2;
    CantorApprox out;
    out.resolution = map.depth();
    out.total_length = 1 + map.tail_bound();
    for (const auto& g : gaps) out.resolved_gap_length += g.length;
    for (std::size_t j = 0; j < gaps.size(); ++j) {
        const bool wraps = j + 1 == gaps.size();
        const ResolvedGap& a = gaps[j];
        const ResolvedGap& b = gaps[wraps ? 0 : j + 1];
        const Rational turn = wraps ? Rational(1) : Rational(0);
        const Rational lap = wraps ? map.circumference() : Rational(0);
        CantorArc arc{a.index, b.index,
                      CertifiedValue(a.angle.midpoint() + a.preceding_length + a.length + half_tail,
                                     a.angle.radius() + half_tail),
                      CertifiedValue(b.angle.midpoint() + b.preceding_length + lap + half_tail,
                                     b.angle.radius() + half_tail),
                      CertifiedValue(b.angle.midpoint() + turn - a.angle.midpoint() + half_tail,
                                     a.angle.radius() + b.angle.radius() + half_tail)};
        out.arcs.push_back(std::move(arc));
    }
    return out;
}

}  // namespace denjoy
