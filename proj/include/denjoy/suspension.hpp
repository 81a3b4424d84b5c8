#pragma once

#include "denjoy/denjoy_map.hpp"

namespace denjoy {

// Point of the sphere S^1_alpha x [-1, 1] / ~, where each end level u = +-1
// collapses to a pole. The base is ignored at the poles.
class SpherePoint {
public:
    SpherePoint(BlownPoint base, Rational height);

    static SpherePoint north();
    static SpherePoint south();

    const BlownPoint& base() const noexcept { return base_; }
    const Rational& height() const noexcept { return height_; }
    bool is_pole() const;

    friend bool operator==(const SpherePoint& a, const SpherePoint& b);

private:
    BlownPoint base_;
    Rational height_;
};

// Point psi_tau(fiber) of the mapping torus, 0 <= tau < 1.
class TorusPoint {
public:
    TorusPoint(SpherePoint fiber, Rational time);

    const SpherePoint& fiber() const noexcept { return fiber_; }
    const Rational& time() const noexcept { return time_; }

    friend bool operator==(const TorusPoint& a, const TorusPoint& b) {
        return a.fiber_ == b.fiber_ && a.time_ == b.time_;
    }

private:
    SpherePoint fiber_;
    Rational time_;
};

// Same base point: equal gap data, or base angles with equal enclosures.
bool same_point(const BlownPoint& a, const BlownPoint& b);

// f_alpha x id, fixing the poles.
SpherePoint sphere_eval(const DenjoyMap& map, const SpherePoint& p);
SpherePoint sphere_eval_inverse(const DenjoyMap& map, const SpherePoint& p);

// Flows for time s: every crossing of an integer time applies sphere_eval
// (sphere_eval_inverse when flowing backwards).
TorusPoint suspension_flow(const DenjoyMap& map, const TorusPoint& p, const Rational& s);

}  // namespace denjoy
