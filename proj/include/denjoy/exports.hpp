#pragma once

#include <cstddef>
#include <string>

#include "denjoy/denjoy_map.hpp"

namespace denjoy {

// Forward orbit of `start` for `steps` steps (step 0 is the start), one CSV
// row per point: step,kind,orbit_id,n,t_num,t_den,collapsed_mid,collapsed_radius.
// Base rows leave orbit_id, n, t_num and t_den empty. Rationals print as p/q.
std::string trajectory_csv(const DenjoyMap& map, const BlownPoint& start, std::size_t steps);

// index,left_mid,left_rad,right_mid,right_rad over the arcs of `approx`.
std::string cantor_csv(const CantorApprox& approx);

}  // namespace denjoy
