#include "doctest.h"

#include <algorithm>
#include <set>

#include "denjoy/dynamics.hpp"
#include "denjoy/errors.hpp"
#include "denjoy/exports.hpp"
#include "oracle.hpp"

using namespace denjoy;

namespace {

DenjoyMap single(const char* alpha, std::uint64_t depth) {
    return build_map(single_orbit_schedule(parse_continued_fraction(alpha)), depth);
}

struct Alpha {
    const char* text;
    std::vector<std::uint64_t> prefix;
    std::vector<std::uint64_t> tail;
};

mpf_class value_of(const Alpha& a) { return oracle::cf_value(a.prefix, a.tail); }

DenjoyMap two_orbits(const char* alpha, std::uint64_t depth) {
    BlowupSchedule s = single_orbit_schedule(parse_continued_fraction(alpha));
    s.orbits.push_back({Rational(1, 2), 0, Rational(1)});
    return build_map(s, depth);
}

// Arc visits of the left endpoint of I_0 under rotation, computed in floating
// point from the orbit angles {n alpha}. Arc r starts right after the r-th
// smallest coarse angle; the left endpoint of a coarse gap closes the arc
// before it.
struct SimulatedDensity {
    bool dense = false;
    std::size_t iterations = 0;
    std::set<std::size_t> unvisited;
};

SimulatedDensity simulate_density(const mpf_class& alpha, long resolution, std::size_t max_iter) {
    std::vector<std::pair<mpf_class, long>> coarse;
    for (long n = -resolution; n <= resolution; ++n) coarse.emplace_back(oracle::frac(mpf_class(alpha * n, oracle::kBits)), n);
    std::sort(coarse.begin(), coarse.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t arcs = coarse.size();
    auto arc_of = [&](long n) -> std::size_t {
        if (n >= -resolution && n <= resolution) {
            for (std::size_t r = 0; r < arcs; ++r) {
                if (coarse[r].second == n) return (r + arcs - 1) % arcs;
            }
        }
        const mpf_class x = oracle::frac(mpf_class(alpha * n, oracle::kBits));
        std::size_t below = 0;
        while (below < arcs && coarse[below].first < x) ++below;
        return below == 0 ? arcs - 1 : below - 1;
    };
    SimulatedDensity out;
    std::vector<bool> seen(arcs, false);
    std::size_t left = arcs;
    long n = 0;
    auto visit = [&](long k) {
        const std::size_t a = arc_of(k);
        if (!seen[a]) {
            seen[a] = true;
            --left;
        }
    };
    visit(0);
    while (left > 0 && out.iterations < max_iter) {
        ++n;
        ++out.iterations;
        visit(n);
    }
    out.dense = left == 0;
    for (std::size_t a = 0; a < arcs; ++a) {
        if (!seen[a]) out.unvisited.insert(a);
    }
    return out;
}

}  // namespace

TEST_CASE("lcg stream is fixed by the seed") {
    Lcg64 a(42);
    Lcg64 b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Lcg64 c(0);
    CHECK(c.next() == Lcg64::kIncrement);
    Lcg64 d(3);
    for (int i = 0; i < 1000; ++i) {
        const Rational u = d.next_unit();
        CHECK(u >= 0);
        CHECK(u < 1);
        const auto k = d.next_in(-5, 5);
        CHECK(k >= -5);
        CHECK(k <= 5);
    }
}

TEST_CASE("semiconjugacy residual on gap points is exactly zero") {
    const DenjoyMap map = single("[0;(2)]", 10);
    auto one_step = semiconjugacy_check(map, 200, 1, 5, SampleKind::gap);
    CHECK(one_step.max_residual == 0);
    CHECK(one_step.gap_samples == 200);
    auto full = semiconjugacy_check(map, 50, 20, 9, SampleKind::gap);
    CHECK(full.max_gap_residual == 0);
    CHECK_THROWS_AS(semiconjugacy_check(map, 1, 21, 9, SampleKind::gap), ResolvedDepthError);
    try {
        semiconjugacy_check(map, 1, 21, 9, SampleKind::mixed);
        FAIL("expected a resolved-depth error");
    } catch (const ResolvedDepthError& e) {
        CHECK(e.offending_index() == 11);
    }
}

TEST_CASE("zero iterations leave every sample fixed") {
    const DenjoyMap map = single("[0;(1)]", 4);
    auto r = semiconjugacy_check(map, 1, 0, 0);
    CHECK(r.max_residual == 0);
    CHECK(r.base_samples + r.gap_samples == 0);
}

TEST_CASE("base point iterates stay inside their certified enclosures") {
    const Alpha family[] = {{"[0;(2)]", {}, {2}}, {"[0;(1)]", {}, {1}}, {"[0;2,1,(3)]", {2, 1}, {3}}};
    for (const Alpha& fam : family) {
        const char* alpha = fam.text;
        CAPTURE(alpha);
        const DenjoyMap map = two_orbits(alpha, 12);
        const mpf_class a = value_of(fam);
        Lcg64 rng(11);
        for (int s = 0; s < 20; ++s) {
            const Rational x0 = rng.next_unit();
            BlownPoint p = section(map, CertifiedValue::exact(x0));
            for (long k = 1; k <= 200; ++k) {
                p = denjoy_eval(map, p);
                REQUIRE(std::holds_alternative<BasePoint>(p));
                const CertifiedValue c = collapse(map, p);
                const mpf_class truth = oracle::frac(mpf_class(oracle::to_mpf(x0) + a * k, oracle::kBits));
                const mpf_class err(abs(oracle::to_mpf(c.midpoint()) - truth), oracle::kBits);
                CHECK(err <= oracle::to_mpf(c.radius()));
            }
            // The blown coordinate is recoverable along the way.
            const CertifiedValue y = blown_coordinate(map, p);
            CHECK(y.midpoint() >= 0);
            CHECK(y.midpoint() < map.circumference());
        }
        auto base = semiconjugacy_check(map, 20, 200, 1, SampleKind::base);
        CHECK(base.max_base_residual > 0);
        CHECK(base.max_base_residual <= pow2(-25));
        auto mixed = semiconjugacy_check(map, 40, 24, 1, SampleKind::mixed);
        CHECK(mixed.max_gap_residual == 0);
        CHECK(mixed.max_base_residual <= pow2(-25));
        CHECK(mixed.base_samples == 20);
        CHECK(mixed.gap_samples == 20);
    }
}

TEST_CASE("semiconjugacy runs are reproducible") {
    const DenjoyMap map = single("[0;(1,2)]", 15);
    auto a = semiconjugacy_check(map, 30, 25, 77);
    auto b = semiconjugacy_check(map, 30, 25, 77);
    CHECK(a.max_residual == b.max_residual);
    CHECK(a.max_base_residual == b.max_base_residual);
}

TEST_CASE("I_0 wanders") {
    const DenjoyMap map = single("[0;(2)]", 20);
    auto r = wandering_images(map, 20);
    CHECK(r.pass);
    CHECK_FALSE(r.first_violation.has_value());
    CHECK(r.images_checked == 3 * 41);
    auto trivial = wandering_images(map, 0);
    CHECK(trivial.pass);
    CHECK(trivial.images_checked == 3);

    const DenjoyMap two = two_orbits("[0;(2)]", 10);
    auto r2 = wandering_images(two, 10);
    CHECK(r2.pass);
    CHECK(r2.orbits == 2);
    CHECK(r2.images_checked == 2 * 3 * 21);
}

TEST_CASE("density examples") {
    const DenjoyMap map = single("[0;(2)]", 8);
    const BlownPoint start = GapPoint({0, 0}, 0);

    auto r = orbit_density(map, start, 3, 10000);
    CHECK(r.dense);
    CHECK(r.arc_count == 7);
    CHECK(r.unvisited.empty());

    auto none = orbit_density(map, start, 3, 0);
    CHECK_FALSE(none.dense);
    CHECK(none.iterations_used == 0);
    CHECK(none.unvisited.size() == 6);

    auto one_arc = orbit_density(map, start, 0, 10);
    CHECK(one_arc.dense);
    CHECK(one_arc.arc_count == 1);

    CHECK_THROWS_AS(orbit_density(map, start, 9, 10), ResolvedDepthError);
    CHECK_THROWS_AS(orbit_density(map, GapPoint({0, 0}, Rational(1, 2)), 3, 10), std::invalid_argument);
}

TEST_CASE("arc visits match a floating point simulation") {
    const Alpha family[] = {{"[0;(2)]", {}, {2}},
                            {"[0;(1)]", {}, {1}},
                            {"[0;(1,2)]", {}, {1, 2}},
                            {"[0;(1,3)]", {}, {1, 3}},
                            {"[0;4,(1,5)]", {4}, {1, 5}}};
    for (const Alpha& fam : family) {
        const char* alpha = fam.text;
        const DenjoyMap map = single(alpha, 12);
        const mpf_class a = value_of(fam);
        for (long res = 0; res <= 6; ++res) {
            for (std::size_t budget : {std::size_t{3}, std::size_t{100000}}) {
                CAPTURE(alpha);
                CAPTURE(res);
                CAPTURE(budget);
                auto lib = orbit_density(map, GapPoint({0, 0}, 0), static_cast<std::uint64_t>(res), budget);
                auto sim = simulate_density(a, res, budget);
                CHECK(lib.dense == sim.dense);
                CHECK(lib.iterations_used == sim.iterations);
                CHECK(std::set<std::size_t>(lib.unvisited.begin(), lib.unvisited.end()) == sim.unvisited);
            }
        }
    }
}

TEST_CASE("base points and right endpoints also reach every arc") {
    const DenjoyMap map = single("[0;(1)]", 10);
    auto from_base = orbit_density(map, section(map, CertifiedValue::exact(Rational(1, 3))), 5, 100000);
    CHECK(from_base.dense);
    auto from_right = orbit_density(map, GapPoint({0, -4}, 1), 5, 100000);
    CHECK(from_right.dense);
}

TEST_CASE("trajectory and cantor csv") {
    const DenjoyMap map = single("[0;(2)]", 4);
    const std::string gap = trajectory_csv(map, GapPoint({0, 0}, Rational(2, 4)), 2);
    CHECK(gap ==
          "step,kind,orbit_id,n,t_num,t_den,collapsed_mid,collapsed_radius\n"
          "0,gap,0,0,1,2,0/1,0/1\n" +
              ("1,gap,0,1,1,2," + to_string(map.orbit_angle({0, 1}).midpoint()) + "," +
               to_string(map.orbit_angle({0, 1}).radius()) + "\n") +
              ("2,gap,0,2,1,2," + to_string(map.orbit_angle({0, 2}).midpoint()) + "," +
               to_string(map.orbit_angle({0, 2}).radius()) + "\n"));
    const std::string base = trajectory_csv(map, section(map, CertifiedValue::exact(Rational(1, 3))), 3);
    CHECK(base.find("\n0,base,,,,,1/3,0/1\n") != std::string::npos);
    CHECK(std::count(base.begin(), base.end(), '\n') == 5);

    const std::string arcs = cantor_csv(cantor_approx(map));
    CHECK(arcs.rfind("index,left_mid,left_rad,right_mid,right_rad\n", 0) == 0);
    CHECK(std::count(arcs.begin(), arcs.end(), '\n') == 10);
}
