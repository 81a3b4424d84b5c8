// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "denjoy/cli.hpp"
#include "denjoy/cw_complex.hpp"
#include "denjoy/dynamics.hpp"
#include "denjoy/ends.hpp"
#include "denjoy/errors.hpp"
#include "denjoy/gl2z.hpp"
#include "denjoy/gluing.hpp"
#include "denjoy/handles.hpp"

using namespace denjoy;

namespace {

// Tolerances and limits.
constexpr long kBaseResidualExponent = 20;  // C3: base residual <= 2^-20
constexpr long kTailExponent = 24;          // C4: tail bound <= 2^-24
constexpr std::size_t kSemiconjugacyDepth = 30;
constexpr std::size_t kBaseSamples = 10000;
constexpr std::size_t kBaseIterations = 1000;
constexpr std::int64_t kWanderingDepth = 25;
constexpr std::size_t kDensityResolution = 5;
constexpr std::size_t kDensityBudget = 100000;
constexpr std::size_t kPermutationTrials = 50;
constexpr std::size_t kMaxPermutationSize = 12;
const char* const kMatrixTolerance = "1/1000000000000";

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (pass) detail = what;
        pass = false;
    }
};

struct Criterion {
    int number;
    const char* name;
    double seconds_limit;
    std::function<Outcome()> body;
};

DenjoyMap single(const char* alpha, std::uint64_t depth) {
    return build_map(single_orbit_schedule(parse_continued_fraction(alpha)), depth);
}

Outcome classification() {
    Outcome o;
    const auto golden_two = parse_continued_fraction("[0;(2)]");
    const auto shifted = parse_continued_fraction("[0;1,(2)]");
    const auto v = gl2z_equivalent(golden_two, shifted, 30);
    o.require(v.kind == Equivalence::equivalent, "[0;(2)] vs [0;1,(2)]: " + to_string(v.kind));
    const auto m = gl2z_matrix_search(golden_two, shifted, 1, parse_rational(kMatrixTolerance));
    o.require(m.has_value() && *m == IntegerMatrix2(0, 1, 1, 1),
              "matrix search B=1 gave " + (m ? m->to_string() : std::string("nothing")));
    const auto w = gl2z_equivalent(golden_two, parse_continued_fraction("[0;(1)]"), 30);
    o.require(w.kind == Equivalence::not_equivalent, "[0;(2)] vs [0;(1)]: " + to_string(w.kind));
    if (o.pass) o.detail = "Equivalent via " + m->to_string() + "; [0;(1)] NotEquivalent";
    return o;
}

Outcome pairwise_family() {
    Outcome o;
    const char* family[] = {"[0;(1)]", "[0;(2)]", "[0;(3)]", "[0;(1,2)]", "[0;(1,3)]", "[0;(2,3)]"};
    std::size_t equivalent = 0;
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            const auto v =
                gl2z_equivalent(parse_continued_fraction(family[i]), parse_continued_fraction(family[j]), 30);
            const Equivalence want = i == j ? Equivalence::equivalent : Equivalence::not_equivalent;
            o.require(v.kind == want, std::string(family[i]) + " vs " + family[j] + ": " + to_string(v.kind));
            equivalent += v.kind == Equivalence::equivalent;
        }
    }
    const auto rotated = gl2z_equivalent(parse_continued_fraction("[0;(1,2)]"), parse_continued_fraction("[0;(2,1)]"), 30);
    o.require(rotated.kind == Equivalence::equivalent, "(1,2) vs (2,1): " + to_string(rotated.kind));
    if (o.pass) o.detail = "36 verdicts, " + std::to_string(equivalent) + " on the diagonal; (1,2) ~ (2,1)";
    return o;
}

Outcome semiconjugacy() {
    Outcome o;
    const DenjoyMap map = single("[0;(2)]", kSemiconjugacyDepth);
    const auto base = semiconjugacy_check(map, kBaseSamples, kBaseIterations, 1, SampleKind::base);
    o.require(base.base_samples == kBaseSamples, "base sample count");
    o.require(base.max_base_residual <= pow2(-kBaseResidualExponent), "base residual above 2^-20");
    // A gap point moves one index per step, so 2N steps is the longest
    // trajectory that stays inside the resolved range.
    const std::size_t gap_steps = 2 * kSemiconjugacyDepth;
    const auto gap = semiconjugacy_check(map, kBaseSamples, gap_steps, 1, SampleKind::gap);
    o.require(gap.max_gap_residual == 0, "gap residual nonzero");
    if (o.pass) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "base residual %.3e over %zu x %zu, gap residual 0 over %zu x %zu",
                      to_double(base.max_base_residual), kBaseSamples, kBaseIterations, kBaseSamples, gap_steps);
        o.detail = buf;
    }
    return o;
}

Outcome wandering() {
    Outcome o;
    const DenjoyMap map = single("[0;(2)]", static_cast<std::uint64_t>(kWanderingDepth));
    for (std::int64_t k = 0; k <= kWanderingDepth; ++k) {
        const auto r = wandering_images(map, k);
        o.require(r.pass, "k = " + std::to_string(k) + ": " + r.first_violation.value_or(""));
    }
    const CantorApprox approx = cantor_approx(map);
    o.require(approx.resolved_gap_length + approx.total_length == 4, "resolved gaps + arcs != 4");
    o.require(map.tail_bound() <= pow2(-kTailExponent), "tail bound above 2^-24");
    o.require(abs(approx.resolved_gap_length - 3) <= pow2(-kTailExponent), "resolved gaps not within 2^-24 of 3");
    CertifiedValue arc_sum = CertifiedValue::exact(0);
    for (const CantorArc& a : approx.arcs) arc_sum += a.length;
    o.require(abs(arc_sum.midpoint() - approx.total_length) <= arc_sum.radius(), "arc lengths do not sum to total");
    if (o.pass) {
        o.detail = "k <= 25 disjoint; " + std::to_string(map.sorted_gaps().size()) + " gaps + " +
                   std::to_string(approx.arcs.size()) + " arcs = 4, tail 2^-24";
    }
    return o;
}

Outcome genus_identities() {
    Outcome o;
    for (std::uint64_t m = 1; m <= 5; ++m) {
        for (std::uint64_t k = 1; k <= 50; ++k) {
            const EulerRank r = euler_and_rank(mapping_torus_complex(m, k));
            o.require(r.euler_characteristic == -static_cast<std::int64_t>(m) && r.free_rank == m + 1,
                      "mapping torus m=" + std::to_string(m) + " k=" + std::to_string(k));
        }
    }
    // Brute force: gap indices (i, n) with n in a window, joined by n ~ n + k.
    constexpr std::size_t window = 401;
    for (std::uint64_t m = 1; m <= 10; ++m) {
        for (std::uint64_t k = 1; k <= 10; ++k) {
            std::vector<std::size_t> parent(m * window);
            std::iota(parent.begin(), parent.end(), 0);
            std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
                return parent[x] == x ? x : parent[x] = find(parent[x]);
            };
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t n = 0; n + k < window; ++n) parent[find(i * window + n)] = find(i * window + n + k);
            }
            std::size_t orbits = 0;
            for (std::size_t x = 0; x < parent.size(); ++x) orbits += find(x) == x;
            o.require(gap_orbit_genus(m, k) == m * k + 1 && orbits + 1 == m * k + 1,
                      "gap orbit genus m=" + std::to_string(m) + " k=" + std::to_string(k));
        }
    }
    if (o.pass) o.detail = "(chi, rank) = (-m, m+1) for m <= 5, k <= 50; mk+1 for m, k <= 10";
    return o;
}

std::uint64_t genus_of(const std::string& text) { return glue_eval(parse_gluing(text)).genus; }

Outcome gluing() {
    Outcome o;
    o.require(genus_of("glue(solid_torus(), solid_torus(), annulus())") == 2, "two solid tori along an annulus");
    HandleRecord difference;
    difference.pieces = {HandlePiece::solid_torus()};
    difference.one_handles = {{0, 0, true}};
    o.require(boundary_genus(difference).genus == 2, "V2 minus V1 boundary genus");
    o.require(genus_of("glue(denjoy(m=1), shift_or(g=1, n=0))") == 4, "denjoy + shift block genus 4");
    for (std::uint64_t g = 0; g <= 4; ++g) {
        for (std::uint64_t n = 0; n <= 4; ++n) {
            const auto d = glue_eval(
                GluingExpression::glue({GluingExpression::denjoy(1), GluingExpression::shift_orientable(g, n)}));
            o.require(d.genus == 2 * g + n + 2 && d.orientable,
                      "shift_or g=" + std::to_string(g) + " n=" + std::to_string(n));
        }
    }
    // One representative per parity bullet: g = 1, odd g >= 3, g = 2, even g >= 4.
    for (std::uint64_t g : {1, 3, 2, 4}) {
        for (std::uint64_t n = 0; n <= 4; ++n) {
            const auto d = glue_eval(
                GluingExpression::glue({GluingExpression::denjoy(1), GluingExpression::shift_nonorientable(g, n)}));
            o.require(d.genus == g + n + 2 && !d.orientable,
                      "shift_nonor g=" + std::to_string(g) + " n=" + std::to_string(n));
        }
    }
    if (o.pass) o.detail = "genus 2, 2, 4; 2g+n+2 (25 cases); g+n+2 non-orientable (20 cases)";
    return o;
}

std::size_t cycle_count(const std::vector<std::size_t>& perm) {
    std::vector<bool> seen(perm.size(), false);
    std::size_t cycles = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = perm[j] - 1) seen[j] = true;
    }
    return cycles;
}

Outcome end_counts() {
    Outcome o;
    for (const char* alpha : {"[0;(2)]", "[0;(1)]", "[0;(1,2)]"}) {
        const DenjoyMap map = single(alpha, 8);
        for (std::uint64_t res = 0; res <= 6; ++res) {
            o.require(end_count(induced_end_map(map, res)) == 1,
                      std::string(alpha) + " at N' = " + std::to_string(res));
        }
    }
    Lcg64 rng(12);
    for (std::size_t t = 0; t < kPermutationTrials; ++t) {
        const auto m = static_cast<std::size_t>(rng.next_in(1, kMaxPermutationSize));
        std::vector<std::size_t> perm(m);
        std::iota(perm.begin(), perm.end(), 1);
        for (std::size_t i = m; i > 1; --i) {
            std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.next_in(0, static_cast<std::int64_t>(i) - 1))]);
        }
        o.require(end_count(finite_ends(perm)) == cycle_count(perm), "permutation trial " + std::to_string(t));
    }
    if (o.pass) o.detail = "one end for 3 alphas x N' 0..6; 50 permutations match cycle counts";
    return o;
}

Outcome density() {
    Outcome o;
    std::string detail;
    for (const char* alpha : {"[0;(2)]", "[0;(1)]", "[0;(1,2)]"}) {
        const DenjoyMap map = single(alpha, 12);
        const auto r = orbit_density(map, GapPoint({0, 0}, 0), kDensityResolution, kDensityBudget);
        o.require(r.dense, std::string(alpha) + ": " + std::to_string(r.unvisited.size()) + " arcs unvisited");
        detail += std::string(detail.empty() ? "" : ", ") + alpha + " " + std::to_string(r.iterations_used) + " steps";
    }
    if (o.pass) o.detail = "all 11 arcs reached: " + detail;
    return o;
}

Outcome determinism() {
    Outcome o;
    const std::vector<std::string> args = {"verify", "--depth", "20", "--samples", "500", "--iters", "60", "--seed", "17"};
    std::ostringstream first, second, err;
    const int a = run_cli(args, first, err);
    const int b = run_cli(args, second, err);
    o.require(a == b, "exit codes differ");
    o.require(first.str() == second.str(), "reports differ");
    o.require(!first.str().empty(), "empty report");
    if (o.pass) o.detail = "two verify reports byte-identical (" + std::to_string(first.str().size()) + " bytes)";
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "classification", 1.0, classification},
        {2, "pairwise non-equivalence", 1.0, pairwise_family},
        {3, "semiconjugacy", 30.0, semiconjugacy},
        {4, "wandering structure", 5.0, wandering},
        {5, "genus identities", 1.0, genus_identities},
        {6, "gluing calculus", 1.0, gluing},
        {7, "end counts", 10.0, end_counts},
        {8, "density", 30.0, density},
        {9, "determinism", 60.0, determinism},
    };
    bool all = true;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > c.seconds_limit) {
            o.require(false, "took longer than " + std::to_string(c.seconds_limit) + " s");
        }
        all = all && o.pass;
        std::printf("%s C%d %s: %s (%.2f s, limit %.0f s)\n", o.pass ? "PASS" : "FAIL", c.number, c.name,
                    o.detail.c_str(), seconds, c.seconds_limit);
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
