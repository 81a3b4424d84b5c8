#include "denjoy/suspension.hpp"

#include <stdexcept>

namespace denjoy {

SpherePoint::SpherePoint(BlownPoint base, Rational height) : base_(std::move(base)), height_(std::move(height)) {
    if (height_ < -1 || height_ > 1) throw std::invalid_argument("sphere height outside [-1, 1]");
}

SpherePoint SpherePoint::north() { return SpherePoint(GapPoint({0, 0}, 0), 1); }
SpherePoint SpherePoint::south() { return SpherePoint(GapPoint({0, 0}, 0), -1); }

bool SpherePoint::is_pole() const { return height_ == 1 || height_ == -1; }

bool operator==(const SpherePoint& a, const SpherePoint& b) {
    if (a.height_ != b.height_) return false;
    return a.is_pole() || same_point(a.base_, b.base_);
}

TorusPoint::TorusPoint(SpherePoint fiber, Rational time) : fiber_(std::move(fiber)), time_(std::move(time)) {
    if (time_ < 0 || time_ >= 1) throw std::invalid_argument("torus time outside [0, 1)");
}

bool same_point(const BlownPoint& a, const BlownPoint& b) {
    if (a.index() != b.index()) return false;
    if (const auto* g = std::get_if<GapPoint>(&a)) return *g == std::get<GapPoint>(b);
    const auto& x = std::get<BasePoint>(a).angle;
    const auto& y = std::get<BasePoint>(b).angle;
    return x.midpoint() == y.midpoint() && x.radius() == y.radius();
}

SpherePoint sphere_eval(const DenjoyMap& map, const SpherePoint& p) {
    if (p.is_pole()) return p;
    return SpherePoint(denjoy_eval(map, p.base()), p.height());
}

SpherePoint sphere_eval_inverse(const DenjoyMap& map, const SpherePoint& p) {
    if (p.is_pole()) return p;
    return SpherePoint(denjoy_eval_inverse(map, p.base()), p.height());
}

TorusPoint suspension_flow(const DenjoyMap& map, const TorusPoint& p, const Rational& s) {
    Rational total = p.time() + s;
    BigInt returns = floor(total);
    total -= Rational(returns);
    SpherePoint fiber = p.fiber();
    for (; returns > 0; --returns) fiber = sphere_eval(map, fiber);
    for (; returns < 0; ++returns) fiber = sphere_eval_inverse(map, fiber);
    return TorusPoint(std::move(fiber), std::move(total));
}

}  // namespace denjoy
