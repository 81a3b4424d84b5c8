#include "denjoy/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

#include "denjoy/errors.hpp"

namespace denjoy {

Rational Lcg64::next_unit() {
    const std::uint64_t bits = next() >> 11;
    return make_rational(BigInt(static_cast<unsigned long>(bits)), BigInt(1) << 53);
}

std::int64_t Lcg64::next_in(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw std::invalid_argument("empty sampling range");
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next() % span);
}

namespace {

constexpr int kSectionRetries = 64;

Rational gap_residual(const DenjoyMap& map, const BlownPoint& image, const GapIndex& expected) {
    if (const auto* g = std::get_if<GapPoint>(&image); g && g->index == expected) return 0;
    // Not reachable for the exact gap rule; measured numerically if it were.
    return circular_distance_bound(collapse(map, image), map.orbit_angle(expected));
}

}  // namespace

SemiconjugacyReport semiconjugacy_check(const DenjoyMap& map, std::size_t sample_count, std::size_t iterations,
                                        std::uint64_t seed, SampleKind kind) {
    SemiconjugacyReport report;
    if (iterations == 0 || sample_count == 0) return report;

    const auto depth = static_cast<std::int64_t>(map.depth());
    const auto iters = static_cast<std::int64_t>(iterations);
    const bool wants_gaps = kind != SampleKind::base;
    if (wants_gaps && iters > 2 * depth) {
        throw ResolvedDepthError("gap samples need " + std::to_string(iterations) + " steps inside |n| <= " +
                                     std::to_string(depth),
                                 depth + 1);
    }

    std::vector<CertifiedValue> rotation;  // {k alpha}, k = 1..iterations
    if (kind != SampleKind::gap) {
        rotation.reserve(iterations);
        for (std::size_t k = 1; k <= iterations; ++k) {
            rotation.push_back(frac_multiple(map.alpha(), static_cast<long>(k), map.working_precision())
                                   .rounded_to_dyadic(map.precision_bits() + 8));
        }
    }

    Lcg64 rng(seed);
    for (std::size_t s = 0; s < sample_count; ++s) {
        const bool gap_sample = kind == SampleKind::gap || (kind == SampleKind::mixed && s % 2 == 0);
        if (gap_sample) {
            const auto orbit = static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(map.orbit_count()) - 1));
            const std::int64_t n = rng.next_in(-depth, depth - iters);
            BlownPoint p = GapPoint({orbit, n}, rng.next_unit());
            for (std::int64_t k = 1; k <= iters; ++k) {
                p = denjoy_eval(map, p);
                Rational r = gap_residual(map, p, {orbit, n + k});
                if (r > report.max_gap_residual) report.max_gap_residual = r;
            }
            ++report.gap_samples;
            continue;
        }

        Rational x0;
        BlownPoint p = GapPoint({0, 0}, 0);
        for (int attempt = 0;; ++attempt) {
            x0 = rng.next_unit();
            try {
                p = section(map, CertifiedValue::exact(x0));
                break;
            } catch (const OrbitHitError&) {
                if (attempt + 1 == kSectionRetries) throw;
            }
        }
        CertifiedValue target;
        for (std::size_t k = 1; k <= iterations; ++k) {
            p = denjoy_eval(map, std::move(p));
            target = rotation[k - 1];
            target += x0;
            Rational r = circular_distance_bound(collapse(map, p), target);
            if (r > report.max_base_residual) report.max_base_residual = r;
        }
        ++report.base_samples;
    }
    report.max_residual = std::max(report.max_gap_residual, report.max_base_residual);
    return report;
}

WanderingReport wandering_images(const DenjoyMap& map, std::int64_t k) {
    WanderingReport report;
    report.orbits = map.orbit_count();
    const std::int64_t reach = k < 0 ? -k : k;
    const Rational probes[] = {Rational(0), Rational(1, 2), Rational(1)};
    for (std::size_t i = 0; i < map.orbit_count() && report.pass; ++i) {
        for (std::int64_t j = -reach; j <= reach && report.pass; ++j) {
            for (const Rational& t : probes) {
                BlownPoint image = denjoy_iterate(map, GapPoint({i, 0}, t), j);
                ++report.images_checked;
                const auto* g = std::get_if<GapPoint>(&image);
                if (!g || !(*g == GapPoint({i, j}, t))) {
                    report.pass = false;
                    report.first_violation = "f^" + std::to_string(j) + "(I_{" + std::to_string(i) +
                                             ",0}) is not I_{" + std::to_string(i) + "," + std::to_string(j) + "}";
                    break;
                }
            }
        }
    }
    // Gaps sit at strictly increasing base angles and the unresolved mass
    // between them is nonnegative, so consecutive gaps cannot overlap.
    const auto& gaps = map.sorted_gaps();
    for (std::size_t s = 0; s < gaps.size() && report.pass; ++s) {
        if (gaps[s].length <= 0 || (s + 1 < gaps.size() && !certainly_less(gaps[s].angle, gaps[s + 1].angle))) {
            report.pass = false;
            report.first_violation = "resolved gaps at sorted positions " + std::to_string(s) + " and " +
                                     std::to_string(s + 1) + " are not certified disjoint";
        }
    }
    return report;
}

ArcLocator::ArcLocator(const DenjoyMap& map, std::uint64_t resolution) : map_(&map), resolution_(resolution) {
    if (resolution > map.depth()) {
        throw ResolvedDepthError("arc resolution " + std::to_string(resolution) + " needs gaps up to |n| = " +
                                     std::to_string(resolution) + " but N = " + std::to_string(map.depth()),
                                 static_cast<long long>(map.depth() + 1));
    }
    const auto& gaps = map.sorted_gaps();
    coarse_.resize(gaps.size());
    for (std::size_t s = 0; s < gaps.size(); ++s) {
        const std::int64_t n = gaps[s].index.n;
        coarse_[s] = static_cast<std::uint64_t>(n < 0 ? -n : n) <= resolution;
        if (coarse_[s]) angles_.push_back(gaps[s].angle);
    }
    arc_count_ = angles_.size();
    arc_after_.resize(gaps.size());
    std::size_t last = arc_count_ - 1;  // gaps before the first coarse one wrap around
    std::size_t rank = 0;
    for (std::size_t s = 0; s < gaps.size(); ++s) {
        if (coarse_[s]) last = rank++;
        arc_after_[s] = last;
    }
}

std::size_t ArcLocator::locate_angle(const CertifiedValue& x) const {
    auto it = std::lower_bound(angles_.begin(), angles_.end(), x.midpoint(),
                               [](const CertifiedValue& a, const Rational& m) { return a.midpoint() < m; });
    const auto k = static_cast<std::size_t>(it - angles_.begin());
    if ((k > 0 && !certainly_less(angles_[k - 1], x)) || (k < angles_.size() && !certainly_less(x, angles_[k]))) {
        throw UndecidableComparisonError("cannot place angle among the resolution-" + std::to_string(resolution_) +
                                         " gaps");
    }
    return k == 0 ? arc_count_ - 1 : k - 1;
}

std::size_t ArcLocator::locate_orbit_point(const GapIndex& g) const {
    // x_{i,n} differs from every coarse orbit point, so refining terminates.
    Rational eps = map_->working_precision();
    for (int attempt = 0;; ++attempt) {
        try {
            return locate_angle(map_->orbit_angle(g, eps));
        } catch (const UndecidableComparisonError&) {
            if (attempt == 8) throw;
            eps /= BigInt(1) << 32;
        }
    }
}

std::size_t ArcLocator::locate(const BlownPoint& p) const {
    if (const auto* b = std::get_if<BasePoint>(&p)) return locate_angle(b->angle);
    const GapPoint& g = std::get<GapPoint>(p);
    if (g.t != 0 && g.t != 1) throw std::invalid_argument("gap interior points are not in the Cantor set");
    if (!map_->is_resolved(g.index)) return locate_orbit_point(g.index);
    const std::size_t s = map_->sorted_position(g.index);
    if (!coarse_[s]) return arc_after_[s];
    // Left endpoint of a coarse gap closes the arc before it.
    return g.t == 1 ? arc_after_[s] : (arc_after_[s] + arc_count_ - 1) % arc_count_;
}

DensityReport orbit_density(const DenjoyMap& map, const BlownPoint& start, std::uint64_t resolution,
                            std::size_t max_iter) {
    ArcLocator locator(map, resolution);
    DensityReport report;
    report.arc_count = locator.arc_count();
    std::vector<bool> visited(report.arc_count, false);
    std::size_t remaining = report.arc_count;
    auto visit = [&](const BlownPoint& p) {
        const std::size_t arc = locator.locate(p);
        if (!visited[arc]) {
            visited[arc] = true;
            --remaining;
        }
    };

    BlownPoint p = start;
    visit(p);
    while (remaining > 0 && report.iterations_used < max_iter) {
        // The Cantor dynamics: gap endpoints follow the exact gap rule even
        // past the resolved depth; base points rotate.
        if (const auto* g = std::get_if<GapPoint>(&p)) {
            p = GapPoint({g->index.orbit_id, g->index.n + 1}, g->t);
        } else {
            p = denjoy_eval(map, p);
        }
        ++report.iterations_used;
        visit(p);
    }
    report.dense = remaining == 0;
    for (std::size_t a = 0; a < visited.size(); ++a) {
        if (!visited[a]) report.unvisited.push_back(a);
    }
    return report;
}

}  // namespace denjoy
