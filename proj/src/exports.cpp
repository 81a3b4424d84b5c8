#include "denjoy/exports.hpp"

#include <sstream>

namespace denjoy {

std::string trajectory_csv(const DenjoyMap& map, const BlownPoint& start, std::size_t steps) {
    std::ostringstream out;
    out << "step,kind,orbit_id,n,t_num,t_den,collapsed_mid,collapsed_radius\n";
    BlownPoint p = start;
    for (std::size_t step = 0; step <= steps; ++step) {
        if (step > 0) p = denjoy_eval(map, p);
        const CertifiedValue c = collapse(map, p);
        out << step << ',';
        if (const auto* g = std::get_if<GapPoint>(&p)) {
            const Rational t = make_rational(g->t.get_num(), g->t.get_den());
            out << "gap," << g->index.orbit_id << ',' << g->index.n << ',' << t.get_num().get_str() << ','
                << t.get_den().get_str();
        } else {
            out << "base,,,,";
        }
        out << ',' << to_string(c.midpoint()) << ',' << to_string(c.radius()) << '\n';
    }
    return out.str();
}

std::string cantor_csv(const CantorApprox& approx) {
    std::ostringstream out;
    out << "index,left_mid,left_rad,right_mid,right_rad\n";
    for (std::size_t i = 0; i < approx.arcs.size(); ++i) {
        const CantorArc& arc = approx.arcs[i];
        out << i << ',' << to_string(arc.left.midpoint()) << ',' << to_string(arc.left.radius()) << ','
            << to_string(arc.right.midpoint()) << ',' << to_string(arc.right.radius()) << '\n';
    }
    return out.str();
}

}  // namespace denjoy
