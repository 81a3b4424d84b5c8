#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "denjoy/dynamics.hpp"
#include "denjoy/ends.hpp"
#include "denjoy/errors.hpp"
#include "denjoy/suspension.hpp"
#include "oracle.hpp"

using namespace denjoy;

namespace {

DenjoyMap single(const char* alpha, std::uint64_t depth) {
    return build_map(single_orbit_schedule(parse_continued_fraction(alpha)), depth);
}

DenjoyMap two_orbits(const char* alpha, std::uint64_t depth) {
    BlowupSchedule s = single_orbit_schedule(parse_continued_fraction(alpha));
    s.orbits.push_back({Rational(1, 2), 0, Rational(1)});
    return build_map(s, depth);
}

// Is x inside the open cyclic interval (a, b)? (a, a) is the circle minus a.
bool cyclic_inside(const mpf_class& x, const mpf_class& a, const mpf_class& b) {
    if (a < b) return a < x && x < b;
    if (a == b) return x != a;
    return x > a || x < b;
}

// Transition edges from floating-point orbit angles: arc (p, q) maps to
// (p + 1, q + 1), and open cyclic intervals meet iff one contains the other's
// start or both start together.
std::set<std::pair<std::size_t, std::size_t>> oracle_edges(const mpf_class& alpha,
                                                           const std::vector<Rational>& offsets, long resolution) {
    struct Point {
        mpf_class angle;
        std::size_t orbit;
        long n;
    };
    auto angle_of = [&](std::size_t orbit, long n) {
        return oracle::frac(mpf_class(oracle::to_mpf(offsets[orbit]) + alpha * n, oracle::kBits));
    };
    std::vector<Point> coarse;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        for (long n = -resolution; n <= resolution; ++n) coarse.push_back({angle_of(i, n), i, n});
    }
    std::sort(coarse.begin(), coarse.end(), [](const Point& a, const Point& b) { return a.angle < b.angle; });
    const std::size_t k = coarse.size();
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t r = 0; r < k; ++r) {
        const Point& p = coarse[r];
        const Point& q = coarse[(r + 1) % k];
        const mpf_class a1 = angle_of(p.orbit, p.n + 1);
        const mpf_class b1 = angle_of(q.orbit, q.n + 1);
        for (std::size_t s = 0; s < k; ++s) {
            const mpf_class& a2 = coarse[s].angle;
            const mpf_class& b2 = coarse[(s + 1) % k].angle;
            if (a1 == a2 || cyclic_inside(a2, a1, b1) || cyclic_inside(a1, a2, b2)) edges.insert({r, s});
        }
    }
    return edges;
}

std::size_t brute_cycles(const std::vector<std::size_t>& perm) {
    // Smallest element of each orbit is its representative.
    std::size_t count = 0;
    for (std::size_t i = 1; i <= perm.size(); ++i) {
        std::size_t j = perm[i - 1];
        std::size_t smallest = i;
        while (j != i) {
            smallest = std::min(smallest, j);
            j = perm[j - 1];
        }
        count += smallest == i;
    }
    return count;
}

}  // namespace

TEST_CASE("sphere points") {
    CHECK_THROWS_AS(SpherePoint(GapPoint({0, 0}, 0), Rational(3, 2)), std::invalid_argument);
    CHECK(SpherePoint::north().is_pole());
    CHECK(SpherePoint(GapPoint({0, 5}, Rational(1, 3)), 1) == SpherePoint::north());
    CHECK_FALSE(SpherePoint::north() == SpherePoint::south());
    CHECK_FALSE(SpherePoint(GapPoint({0, 1}, 0), 0) == SpherePoint(GapPoint({0, 2}, 0), 0));
    CHECK_THROWS_AS(TorusPoint(SpherePoint::north(), 1), std::invalid_argument);
}

TEST_CASE("sphere_eval is f_alpha on each parallel and fixes the poles") {
    const DenjoyMap map = single("[0;(2)]", 10);
    CHECK(sphere_eval(map, SpherePoint::north()) == SpherePoint::north());
    CHECK(sphere_eval(map, SpherePoint::south()) == SpherePoint::south());
    const SpherePoint p(GapPoint({0, 0}, Rational(1, 4)), Rational(1, 3));
    CHECK(sphere_eval(map, p) == SpherePoint(GapPoint({0, 1}, Rational(1, 4)), Rational(1, 3)));
    CHECK(sphere_eval_inverse(map, sphere_eval(map, p)) == p);

    const SpherePoint eq(section(map, CertifiedValue::exact(Rational(1, 3))), 0);
    const SpherePoint image = sphere_eval(map, eq);
    CHECK(image.height() == 0);
    CHECK(same_point(image.base(), denjoy_eval(map, eq.base())));

    // No sampled non-pole point is fixed.
    Lcg64 rng(4);
    for (int i = 0; i < 200; ++i) {
        const Rational u = rng.next_unit() * 2 - 1;
        const SpherePoint gap(GapPoint({0, rng.next_in(-9, 9)}, rng.next_unit()), u);
        CHECK_FALSE(sphere_eval(map, gap) == gap);
        CHECK(sphere_eval(map, gap).height() == u);
    }
}

TEST_CASE("suspension flow") {
    const DenjoyMap map = single("[0;(2)]", 10);
    const SpherePoint fiber(GapPoint({0, 0}, Rational(2, 7)), 0);
    const TorusPoint p(fiber, 0);
    CHECK(suspension_flow(map, p, 0) == p);
    CHECK(suspension_flow(map, p, 1) == TorusPoint(sphere_eval(map, fiber), 0));
    CHECK(suspension_flow(map, p, Rational(5, 2)) ==
          TorusPoint(SpherePoint(GapPoint({0, 2}, Rational(2, 7)), 0), Rational(1, 2)));
    CHECK(suspension_flow(map, p, Rational(-1, 3)) ==
          TorusPoint(SpherePoint(GapPoint({0, -1}, Rational(2, 7)), 0), Rational(2, 3)));

    SUBCASE("additive on gap points") {
        Lcg64 rng(8);
        for (int i = 0; i < 300; ++i) {
            const TorusPoint q(SpherePoint(GapPoint({0, rng.next_in(-3, 3)}, rng.next_unit()), Rational(1, 5)),
                               rng.next_unit());
            const Rational s = Rational(rng.next_in(-30, 30), 7);
            const Rational t = Rational(rng.next_in(-30, 30), 11);
            CHECK(suspension_flow(map, suspension_flow(map, q, s), t) == suspension_flow(map, q, s + t));
        }
    }
    SUBCASE("additive on base points within radii") {
        const TorusPoint q(SpherePoint(section(map, CertifiedValue::exact(Rational(1, 10))), Rational(-1, 2)),
                           Rational(1, 3));
        const TorusPoint a = suspension_flow(map, suspension_flow(map, q, Rational(7, 2)), Rational(-5, 3));
        const TorusPoint b = suspension_flow(map, q, Rational(11, 6));
        CHECK(a.time() == b.time());
        const CertifiedValue x = collapse(map, a.fiber().base());
        const CertifiedValue y = collapse(map, b.fiber().base());
        CHECK(circular_distance_bound(x, y) <= 2 * (x.radius() + y.radius()));
    }
}

TEST_CASE("induced end map examples") {
    const DenjoyMap map = single("[0;(2)]", 8);
    const CantorEnds zero = induced_end_map(map, 0);
    REQUIRE(zero.arcs.size() == 1);
    CHECK(zero.edges == std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}});

    const CantorEnds two = induced_end_map(map, 2);
    CHECK(two.arcs.size() == 5);
    for (std::size_t a = 0; a < two.arcs.size(); ++a) {
        CHECK(std::any_of(two.edges.begin(), two.edges.end(), [a](const auto& e) { return e.first == a; }));
    }

    const CantorEnds pair = induced_end_map(two_orbits("[0;(2)]", 4), 1);
    CHECK(pair.arcs.size() == 6);

    CHECK_THROWS_AS(induced_end_map(map, 8), ResolvedDepthError);
}

TEST_CASE("transition edges match the floating point overlap oracle") {
    struct Case {
        const char* text;
        std::vector<std::uint64_t> prefix, tail;
    };
    const Case cases[] = {{"[0;(2)]", {}, {2}},
                          {"[0;(1)]", {}, {1}},
                          {"[0;(1,2)]", {}, {1, 2}},
                          {"[0;3,(1,4)]", {3}, {1, 4}}};
    for (const Case& c : cases) {
        const mpf_class alpha = oracle::cf_value(c.prefix, c.tail);
        for (long res = 0; res <= 6; ++res) {
            CAPTURE(c.text);
            CAPTURE(res);
            const auto lib = induced_end_map(single(c.text, 8), static_cast<std::uint64_t>(res));
            CHECK(std::set<std::pair<std::size_t, std::size_t>>(lib.edges.begin(), lib.edges.end()) ==
                  oracle_edges(alpha, {Rational(0)}, res));
            CHECK(end_count(lib) == 1);
        }
        for (long res = 0; res <= 3; ++res) {
            const auto lib = induced_end_map(two_orbits(c.text, 6), static_cast<std::uint64_t>(res));
            CHECK(std::set<std::pair<std::size_t, std::size_t>>(lib.edges.begin(), lib.edges.end()) ==
                  oracle_edges(alpha, {Rational(0), Rational(1, 2)}, res));
        }
    }
}

TEST_CASE("finite end models count permutation cycles") {
    CHECK(end_count(finite_ends({1, 2, 3})) == 3);
    CHECK(end_count(finite_ends({2, 1, 3})) == 2);
    CHECK(end_count(finite_ends({2, 3, 1})) == 1);
    CHECK_THROWS_AS(finite_ends({1, 1, 3}), std::invalid_argument);
    CHECK_THROWS_AS(finite_ends({0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(finite_ends({}), std::invalid_argument);

    Lcg64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const auto m = static_cast<std::size_t>(rng.next_in(1, 12));
        std::vector<std::size_t> perm(m);
        std::iota(perm.begin(), perm.end(), 1);
        for (std::size_t i = m; i > 1; --i) std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(i) - 1))]);
        CHECK(end_count(finite_ends(perm)) == brute_cycles(perm));
    }
}

TEST_CASE("ends json") {
    const DenjoyMap map = single("[0;(1)]", 3);
    const auto j = transition_json(induced_end_map(map, 1));
    CHECK(j["resolution"] == 1);
    CHECK(j["arcs"].size() == 3);
    CHECK(j["arcs"][0]["after"].size() == 2);
    CHECK(j["edges"].is_array());
    CHECK(end_count_json(induced_end_map(map, 1)).dump() == R"({"count":1,"resolution":1})");
    CHECK(end_count_json(finite_ends({2, 1})).dump() == R"({"count":1,"resolution":null})");
}
