#include "denjoy/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "denjoy/cw_complex.hpp"
#include "denjoy/dynamics.hpp"
#include "denjoy/ends.hpp"
#include "denjoy/errors.hpp"
#include "denjoy/exports.hpp"
#include "denjoy/gl2z.hpp"
#include "denjoy/gluing.hpp"

namespace denjoy {

namespace {

constexpr long kBaseResidualLimitExponent = 20;

// Bad input that should exit with kExitUsage.
class UsageError : public Error {
public:
    using Error::Error;
};

std::string fixed(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

// Largest e with r <= 2^-e, printed as "2^-e" (r > 0).
std::string power_of_two_bound(const Rational& r) {
    if (r == 0) return "0";
    long e = static_cast<long>(mpz_sizeinbase(r.get_den_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(r.get_num_mpz_t(), 2));
    while (r > pow2(-e)) --e;
    while (r <= pow2(-(e + 1))) ++e;
    return "2^" + std::to_string(-e);
}

std::string tail_text(const std::vector<ContinuedFraction::Quotient>& tail) {
    std::string s = "(";
    for (std::size_t i = 0; i < tail.size(); ++i) s += (i ? "," : "") + std::to_string(tail[i]);
    return s + ")";
}

ContinuedFraction parse_alpha(const std::string& text) {
    try {
        return parse_continued_fraction(text);
    } catch (const Error& e) {
        throw UsageError(std::string("bad --alpha: ") + e.what());
    }
}

Rational parse_tol(const std::string& text) {
    try {
        Rational tol = parse_rational(text);
        if (tol <= 0) throw UsageError("--tol must be positive");
        return tol;
    } catch (const UsageError&) {
        throw;
    } catch (const Error& e) {
        throw UsageError(std::string("bad --tol: ") + e.what());
    }
}

DenjoyMap map_from(const RunConfig& cfg) {
    return build_map(single_orbit_schedule(parse_alpha(cfg.alpha)), cfg.depth);
}

// Writes to cfg.out when set, else to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw UsageError("cannot write " + cfg.out);
    file << text;
    if (!file) throw UsageError("write to " + cfg.out + " failed");
}

int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    const ContinuedFraction a = parse_alpha(cfg.alpha);
    const ContinuedFraction b = parse_alpha(cfg.other_alpha);
    const Rational tol = parse_tol(cfg.tol);
    const EquivalenceVerdict v = gl2z_equivalent(a, b, cfg.depth);
    out << "alpha:   " << a.to_string() << '\n';
    out << "alpha':  " << b.to_string() << '\n';
    out << "verdict: " << to_string(v.kind) << '\n';
    if (v.kind == Equivalence::equivalent) out << "tail witness: " << tail_text(v.tail_witness) << '\n';
    if (!v.detail.empty()) out << "detail: " << v.detail << '\n';
    if (v.kind != Equivalence::not_equivalent) {
        std::optional<IntegerMatrix2> m;
        try {
            m = gl2z_matrix_search(a, b, cfg.bound, tol);
        } catch (const DepthExhaustedError& e) {
            out << "matrix search: stopped, " << e.what() << '\n';
        }
        if (m) out << "matrix (|entries| <= " << cfg.bound << "): " << m->to_string() << '\n';
        else out << "matrix (|entries| <= " << cfg.bound << "): none found\n";
    }
    switch (v.kind) {
        case Equivalence::equivalent:
            return kExitOk;
        case Equivalence::not_equivalent:
            return kExitNegative;
        case Equivalence::unknown_up_to_depth:
            return kExitUnknown;
    }
    return kExitUnknown;
}

struct CheckRow {
    std::string name;
    bool pass = false;
    std::string detail;
};

template <typename Check>
CheckRow run_check(const std::string& name, Check&& check) {
    CheckRow row{name, false, ""};
    try {
        check(row);
    } catch (const ResolvedDepthError& e) {
        row.pass = false;
        row.detail = "resolved-depth error at |n| = " + std::to_string(e.offending_index()) + ": " + e.what();
    } catch (const Error& e) {
        row.pass = false;
        row.detail = e.what();
    }
    return row;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const ContinuedFraction alpha = parse_alpha(cfg.alpha);
    const DenjoyMap map = build_map(single_orbit_schedule(alpha), cfg.depth);
    const std::size_t iters = cfg.iterations;
    const std::uint64_t n = cfg.depth;
    std::vector<CheckRow> rows;

    rows.push_back(run_check("semiconjugacy/base", [&](CheckRow& row) {
        const auto r = semiconjugacy_check(map, cfg.samples, iters, cfg.seed, SampleKind::base);
        row.pass = r.max_base_residual <= pow2(-kBaseResidualLimitExponent);
        row.detail = "max residual <= " + power_of_two_bound(r.max_base_residual) + " (limit 2^-" +
                     std::to_string(kBaseResidualLimitExponent) + "), " + std::to_string(r.base_samples) +
                     " samples x " + std::to_string(iters) + " steps";
    }));
    rows.push_back(run_check("semiconjugacy/gap", [&](CheckRow& row) {
        const std::size_t steps = std::min<std::size_t>(iters, 2 * n);
        const auto r = semiconjugacy_check(map, cfg.samples, steps, cfg.seed, SampleKind::gap);
        row.pass = r.max_gap_residual == 0;
        row.detail = "max residual = " + (r.max_gap_residual == 0 ? std::string("0") : to_string(r.max_gap_residual)) + ", " + std::to_string(r.gap_samples) +
                     " samples x " + std::to_string(steps) + " steps";
    }));
    rows.push_back(run_check("wandering", [&](CheckRow& row) {
        const auto k = static_cast<std::int64_t>(std::min<std::uint64_t>(iters, n));
        const auto r = wandering_images(map, k);
        row.pass = r.pass;
        row.detail = r.pass ? "f^j(I_0) = I_j for |j| <= " + std::to_string(k) + ", " +
                                  std::to_string(map.sorted_gaps().size()) + " gaps pairwise disjoint"
                            : *r.first_violation;
    }));
    rows.push_back(run_check("density", [&](CheckRow& row) {
        const auto r = orbit_density(map, GapPoint({0, 0}, 0), cfg.resolution, cfg.density_budget);
        row.pass = r.dense;
        row.detail = r.dense ? "all " + std::to_string(r.arc_count) + " arcs at resolution " +
                                   std::to_string(cfg.resolution) + " visited after " +
                                   std::to_string(r.iterations_used) + " steps"
                             : std::to_string(r.unvisited.size()) + " of " + std::to_string(r.arc_count) +
                                   " arcs unvisited after " + std::to_string(r.iterations_used) + " steps";
    }));

    const bool all = std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
    out << "verify alpha=" << alpha.to_string() << " N=" << n << " samples=" << cfg.samples
        << " iterations=" << iters << " seed=" << cfg.seed << '\n';
    out << std::left << std::setw(22) << "check" << std::setw(8) << "status" << "detail\n";
    for (const CheckRow& r : rows) {
        out << std::left << std::setw(22) << r.name << std::setw(8) << (r.pass ? "PASS" : "FAIL") << r.detail << '\n';
    }
    out << "result: " << (all ? "PASS" : "FAIL") << '\n';
    return all ? kExitOk : kExitNegative;
}

int cmd_genus(const RunConfig& cfg, std::ostream& out) {
    GluingExpression e;
    try {
        e = parse_gluing(cfg.expression);
    } catch (const ParseError& err) {
        throw UsageError(err.what());
    }
    out << to_json(glue_eval(e)).dump(2) << '\n';
    return kExitOk;
}

std::vector<std::size_t> parse_permutation(const std::string& text) {
    std::vector<std::size_t> perm;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            perm.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("bad --permutation entry '" + item + "'");
        }
    }
    return perm;
}

int cmd_ends(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.permutation.empty()) {
        FiniteEnds model;
        try {
            model = finite_ends(parse_permutation(cfg.permutation));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        out << end_count_json(model).dump() << '\n';
        return kExitOk;
    }
    const DenjoyMap map = map_from(cfg);
    const CantorEnds ends = induced_end_map(map, cfg.resolution);
    if (cfg.edges) out << transition_json(ends).dump() << '\n';
    out << end_count_json(ends).dump() << '\n';
    return kExitOk;
}

BlownPoint parse_start(const DenjoyMap& map, const std::string& text) {
    try {
        if (text.rfind("gap:", 0) == 0) {
            std::stringstream ss(text.substr(4));
            std::string orbit, n, t;
            if (!std::getline(ss, orbit, ',') || !std::getline(ss, n, ',') || !std::getline(ss, t)) {
                throw UsageError("--start gap:ORBIT,N,T");
            }
            return GapPoint({std::stoul(orbit), std::stoll(n)}, parse_rational(t));
        }
        if (text.rfind("base:", 0) == 0) return section(map, CertifiedValue::exact(parse_rational(text.substr(5))));
    } catch (const UsageError&) {
        throw;
    } catch (const ParseError& e) {
        throw UsageError(std::string("bad --start: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad --start: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw UsageError(std::string("bad --start: ") + e.what());
    }
    throw UsageError("--start must be gap:ORBIT,N,T or base:X");
}

int cmd_orbit(const RunConfig& cfg, std::ostream& out) {
    const DenjoyMap map = map_from(cfg);
    emit(cfg, out, trajectory_csv(map, parse_start(map, cfg.start), cfg.steps));
    return kExitOk;
}

int cmd_cantor(const RunConfig& cfg, std::ostream& out) {
    emit(cfg, out, cantor_csv(cantor_approx(map_from(cfg))));
    return kExitOk;
}

int cmd_complex(const RunConfig& cfg, std::ostream& out) {
    CWComplex cw;
    if (cfg.complex_kind == "torus") cw = mapping_torus_complex(cfg.orbits, cfg.truncation);
    else if (cfg.complex_kind == "spine") cw = spine_complex(cfg.orbits, cfg.truncation);
    else throw UsageError("--kind must be torus or spine");
    const EulerRank r = euler_and_rank(cw);
    nlohmann::json j = {{"kind", cfg.complex_kind},
                        {"m", cfg.orbits},
                        {"k", cfg.truncation},
                        {"vertices", cw.vertex_count},
                        {"edges", cw.edges.size()},
                        {"faces", cw.faces.size()},
                        {"euler_characteristic", r.euler_characteristic},
                        {"free_rank", r.free_rank},
                        {"gap_orbit_genus", gap_orbit_genus(cfg.orbits, 1)}};
    out << j.dump(2) << '\n';
    return kExitOk;
}

// Circle of circumference 1 + L with the resolved gaps highlighted, and the
// graph of the collapse map over blown coordinates.
std::string plot_svg(const DenjoyMap& map) {
    const double circumference = to_double(map.circumference());
    const double pi = std::acos(-1.0);
    const double cx = 200, cy = 200, radius = 150;
    auto on_circle = [&](double y) {
        const double theta = 2 * pi * y / circumference;
        return std::make_pair(cx + radius * std::cos(theta), cy - radius * std::sin(theta));
    };
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\" viewBox=\"0 0 800 400\">\n";
    svg << "<title>alpha = " << map.alpha().to_string() << ", N = " << map.depth() << "</title>\n";
    svg << "<circle cx=\"" << fixed(cx) << "\" cy=\"" << fixed(cy) << "\" r=\"" << fixed(radius)
        << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";

    std::vector<std::pair<double, double>> stairs = {{0.0, 0.0}};
    for (const ResolvedGap& g : map.sorted_gaps()) {
        const double angle = to_double(g.angle.midpoint());
        const double left = to_double(blown_coordinate(map, GapPoint(g.index, 0)).midpoint());
        const double right = left + to_double(g.length);
        const auto [x0, y0] = on_circle(left);
        const auto [x1, y1] = on_circle(right);
        const int large = to_double(g.length) > circumference / 2 ? 1 : 0;
        svg << "<path d=\"M " << fixed(x0) << ' ' << fixed(y0) << " A " << fixed(radius) << ' ' << fixed(radius)
            << " 0 " << large << " 0 " << fixed(x1) << ' ' << fixed(y1)
            << "\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"4\"><title>I(" << g.index.orbit_id << ','
            << g.index.n << ")</title></path>\n";
        stairs.emplace_back(left, angle);
        stairs.emplace_back(right, angle);
    }
    stairs.emplace_back(circumference, 1.0);

    const double px = 440, py = 350, w = 330, h = 300;
    svg << "<rect x=\"" << fixed(px) << "\" y=\"" << fixed(py - h) << "\" width=\"" << fixed(w) << "\" height=\""
        << fixed(h) << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
    svg << "<polyline fill=\"none\" stroke=\"#2c3e50\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < stairs.size(); ++i) {
        svg << (i ? " " : "") << fixed(px + w * stairs[i].first / circumference) << ','
            << fixed(py - h * stairs[i].second);
    }
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

int cmd_plot(const RunConfig& cfg, std::ostream& out) {
    const DenjoyMap map = map_from(cfg);
    const std::string dir = cfg.out.empty() ? "." : cfg.out;
    const std::vector<std::pair<std::string, std::string>> files = {
        {dir + "/denjoy_plot.svg", plot_svg(map)},
        {dir + "/trajectory.csv", trajectory_csv(map, GapPoint({0, -static_cast<std::int64_t>(map.depth())}, 0),
                                                 2 * map.depth())},
        {dir + "/cantor.csv", cantor_csv(cantor_approx(map))},
    };
    for (const auto& [path, text] : files) {
        std::ofstream file(path, std::ios::binary);
        if (!file) throw UsageError("cannot write " + path);
        file << text;
        if (!file) throw UsageError("write to " + path + " failed");
        out << "wrote " << path << '\n';
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Denjoy blow-ups, their mapping tori and GL(2,Z) classification of rotation numbers", "denjoy"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--alpha", cfg.alpha, "rotation number as a continued fraction, e.g. [0;(2)]");
    app.add_option("--depth", cfg.depth, "resolved depth N (also the comparison depth for streams)");
    app.add_option("--resolution", cfg.resolution, "arc resolution N'");
    app.add_option("--seed", cfg.seed, "seed of the sampling generator");
    app.add_option("--tol", cfg.tol, "matrix search tolerance (rational or decimal)");
    app.add_option("--out", cfg.out, "output file (orbit, cantor) or directory (plot)");

    auto* classify = app.add_subcommand("classify", "decide GL(2,Z)-equivalence of two rotation numbers");
    std::string first_alpha;
    classify->add_option("alpha", first_alpha, "first continued fraction (defaults to --alpha)")->required();
    classify->add_option("other", cfg.other_alpha, "second continued fraction");
    classify->add_option("--bound", cfg.bound, "entry bound B for the matrix search");

    auto* verify = app.add_subcommand("verify", "semiconjugacy, wandering interval and density checks");
    verify->add_option("--samples", cfg.samples, "sample points per semiconjugacy check");
    verify->add_option("--iters", cfg.iterations, "iterations per sample");
    verify->add_option("--density-budget", cfg.density_budget, "iteration budget of the density check");

    auto* genus = app.add_subcommand("genus", "handlebody genus of a gluing expression");
    genus->add_option("expression", cfg.expression, "e.g. \"power(denjoy(m=1), k=3)\"")->required();

    auto* ends = app.add_subcommand("ends", "end count of the mapping torus");
    ends->add_option("--permutation", cfg.permutation, "finite model: images of ends 1..m, e.g. 2,1,3");
    ends->add_flag("--edges", cfg.edges, "also print the arc transition relation");

    auto* orbit = app.add_subcommand("orbit", "trajectory CSV");
    orbit->add_option("--start", cfg.start, "gap:ORBIT,N,T or base:X");
    orbit->add_option("--steps", cfg.steps, "number of steps");

    app.add_subcommand("cantor", "Cantor arc CSV");

    auto* complex = app.add_subcommand("complex", "Euler characteristic and free rank of a cell complex");
    complex->add_option("--kind", cfg.complex_kind, "torus or spine");
    complex->add_option("--m", cfg.orbits, "number of blown orbits");
    complex->add_option("--k", cfg.truncation, "truncation k");

    app.add_subcommand("plot", "SVG of the blown-up circle and collapse map, plus CSV exports");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();
    // A lone positional is the second number; the first then comes from --alpha.
    if (cfg.other_alpha.empty()) cfg.other_alpha = first_alpha;
    else cfg.alpha = first_alpha;

    try {
        if (cfg.subcommand == "classify") return cmd_classify(cfg, out);
        if (cfg.subcommand == "verify") return cmd_verify(cfg, out);
        if (cfg.subcommand == "genus") return cmd_genus(cfg, out);
        if (cfg.subcommand == "ends") return cmd_ends(cfg, out);
        if (cfg.subcommand == "orbit") return cmd_orbit(cfg, out);
        if (cfg.subcommand == "cantor") return cmd_cantor(cfg, out);
        if (cfg.subcommand == "complex") return cmd_complex(cfg, out);
        if (cfg.subcommand == "plot") return cmd_plot(cfg, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ResolvedDepthError& e) {
        err << "error: resolved-depth error at |n| = " << e.offending_index() << ": " << e.what() << '\n';
        return kExitNegative;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNegative;
    }
    err << "error: unknown subcommand\n";
    return kExitUsage;
}

}  // namespace denjoy
