#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace denjoy {

// Finite 2-complex. Edge e runs from edges[e].first to edges[e].second; a
// face boundary is a closed edge path written with signed 1-based edge
// numbers (-3 is edge 2 traversed backwards).
struct CWComplex {
    std::size_t vertex_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::vector<std::int64_t>> faces;
};

// Graph with vertices nu (0) and sigma (1) and edges e_{i,j}, |j| <= k, for
// each of m orbits, all from nu to sigma.
CWComplex spine_complex(std::uint64_t m, std::uint64_t k);

// Mapping torus cell structure: loops e_nu (edge 1) at nu and e_sigma
// (edge 2) at sigma, strip edges e_{i,j} from sigma to nu, and one square
// e_{i,j} e_nu e_{i,j+1}^-1 e_sigma^-1 for each i and -k <= j < k.
CWComplex mapping_torus_complex(std::uint64_t m, std::uint64_t k);

struct EulerRank {
    std::int64_t euler_characteristic = 0;
    std::uint64_t free_rank = 0;

    friend bool operator==(const EulerRank&, const EulerRank&) = default;
};

// chi = V - E + F and the rank of the free fundamental group. Faces must
// collapse away one at a time through an edge no other remaining face uses
// (UnsupportedFacePatternError otherwise); DisconnectedError if the
// 1-skeleton is disconnected.
EulerRank euler_and_rank(const CWComplex& cw);

// Handlebody genus m k + 1 of the mapping torus of f_alpha^k with m blown
// orbits: one handle per orbit of (i, n) -> (i, n + k), plus one.
std::uint64_t gap_orbit_genus(std::uint64_t m, std::uint64_t k);

}  // namespace denjoy
