#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <variant>
#include <vector>

#include "denjoy/denjoy_map.hpp"
#include "json.hpp"

namespace denjoy {

// Arc of the Cantor approximation from the right end of gap `after` to the
// left end of gap `before`.
struct ArcBounds {
    GapIndex after;
    GapIndex before;
};

// Arcs complementary to the gaps |n| <= resolution, in circular order from
// angle 0, with an edge (a, b) whenever f_alpha(arc a) meets arc b.
struct CantorEnds {
    std::uint64_t resolution = 0;
    std::vector<ArcBounds> arcs;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // sorted
};

// Surface with m ends permuted by the monodromy: permutation[i] is the image
// of end i + 1, values in 1..m.
struct FiniteEnds {
    std::vector<std::size_t> permutation;
};

using EndsModel = std::variant<CantorEnds, FiniteEnds>;

// Throws std::invalid_argument unless `permutation` is a bijection of 1..m.
FiniteEnds finite_ends(std::vector<std::size_t> permutation);

// Needs resolution + 1 <= N so that the image arcs are bounded by resolved
// gaps; throws ResolvedDepthError otherwise.
CantorEnds induced_end_map(const DenjoyMap& map, std::uint64_t resolution);

// Weakly connected components of the transition graph, or cycles of the
// permutation. For CantorEnds this bounds the number of ends from above.
std::size_t end_count(const EndsModel& model);

// {resolution, arcs: [{index, after: [i, n], before: [i, n]}], edges: [[a, b]]}
nlohmann::json transition_json(const CantorEnds& ends);
// {resolution, count}; resolution is null for FiniteEnds.
nlohmann::json end_count_json(const EndsModel& model);

}  // namespace denjoy
