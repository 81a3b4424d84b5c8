#include "denjoy/cw_complex.hpp"

#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "denjoy/errors.hpp"

namespace denjoy {

namespace {

std::size_t edge_of(std::int64_t signed_edge) {
    return static_cast<std::size_t>(signed_edge < 0 ? -signed_edge : signed_edge) - 1;
}

std::size_t root(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

void check_face(const CWComplex& cw, const std::vector<std::int64_t>& word, std::size_t index) {
    if (word.empty()) throw UnsupportedFacePatternError("face " + std::to_string(index) + " has an empty boundary");
    std::size_t at = 0;
    for (std::size_t pos = 0; pos < word.size(); ++pos) {
        const std::int64_t s = word[pos];
        if (s == 0 || edge_of(s) >= cw.edges.size()) {
            throw std::invalid_argument("face " + std::to_string(index) + " uses an unknown edge");
        }
        const auto& [from, to] = cw.edges[edge_of(s)];
        const std::size_t tail = s > 0 ? from : to;
        const std::size_t head = s > 0 ? to : from;
        if (pos == 0) at = tail;
        if (tail != at) {
            throw UnsupportedFacePatternError("boundary of face " + std::to_string(index) + " is not a closed path");
        }
        at = head;
    }
    const std::int64_t first = word.front();
    const auto& [from, to] = cw.edges[edge_of(first)];
    if (at != (first > 0 ? from : to)) {
        throw UnsupportedFacePatternError("boundary of face " + std::to_string(index) + " is not a closed path");
    }
}

}  // namespace

CWComplex spine_complex(std::uint64_t m, std::uint64_t k) {
    if (m == 0) throw std::invalid_argument("spine needs at least one orbit");
    CWComplex cw;
    cw.vertex_count = 2;
    cw.edges.assign(m * (2 * k + 1), {0, 1});
    return cw;
}

CWComplex mapping_torus_complex(std::uint64_t m, std::uint64_t k) {
    if (m == 0 || k == 0) throw std::invalid_argument("mapping torus complex needs m >= 1 and k >= 1");
    CWComplex cw;
    cw.vertex_count = 2;
    cw.edges.push_back({0, 0});  // e_nu
    cw.edges.push_back({1, 1});  // e_sigma
    const std::uint64_t strip = 2 * k + 1;
    for (std::uint64_t e = 0; e < m * strip; ++e) cw.edges.push_back({1, 0});
    for (std::uint64_t i = 0; i < m; ++i) {
        for (std::uint64_t j = 0; j + 1 < strip; ++j) {
            const auto e = static_cast<std::int64_t>(3 + i * strip + j);
            cw.faces.push_back({e, 1, -(e + 1), -2});
        }
    }
    return cw;
}

EulerRank euler_and_rank(const CWComplex& cw) {
    if (cw.vertex_count == 0) throw DisconnectedError("complex has no vertices");
    std::vector<std::size_t> parent(cw.vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    for (const auto& [a, b] : cw.edges) {
        if (a >= cw.vertex_count || b >= cw.vertex_count) throw std::invalid_argument("edge endpoint out of range");
        parent[root(parent, a)] = root(parent, b);
    }
    for (std::size_t v = 1; v < cw.vertex_count; ++v) {
        if (root(parent, v) != root(parent, 0)) {
            throw DisconnectedError("vertex " + std::to_string(v) + " is not connected to vertex 0");
        }
    }
    for (std::size_t f = 0; f < cw.faces.size(); ++f) check_face(cw, cw.faces[f], f);

    // Collapse certificate: repeatedly push in a face through an edge that
    // occurs exactly once among the remaining face boundaries.
    std::vector<std::size_t> uses(cw.edges.size(), 0);
    for (const auto& word : cw.faces) {
        for (std::int64_t s : word) ++uses[edge_of(s)];
    }
    std::set<std::size_t> remaining;
    for (std::size_t f = 0; f < cw.faces.size(); ++f) remaining.insert(f);
    while (!remaining.empty()) {
        bool collapsed = false;
        for (auto it = remaining.begin(); it != remaining.end(); ++it) {
            const auto& word = cw.faces[*it];
            bool free_edge = false;
            for (std::int64_t s : word) free_edge = free_edge || uses[edge_of(s)] == 1;
            if (!free_edge) continue;
            for (std::int64_t s : word) --uses[edge_of(s)];
            remaining.erase(it);
            collapsed = true;
            break;
        }
        if (!collapsed) {
            throw UnsupportedFacePatternError(std::to_string(remaining.size()) +
                                              " faces have no free edge; cannot certify a free fundamental group");
        }
    }

    EulerRank out;
    out.euler_characteristic = static_cast<std::int64_t>(cw.vertex_count) - static_cast<std::int64_t>(cw.edges.size()) +
                               static_cast<std::int64_t>(cw.faces.size());
    out.free_rank = static_cast<std::uint64_t>(1 - out.euler_characteristic);
    return out;
}

std::uint64_t gap_orbit_genus(std::uint64_t m, std::uint64_t k) {
    if (m == 0 || k == 0) throw std::invalid_argument("gap orbit genus needs m >= 1 and k >= 1");
    // Each orbit of (i, n) -> (i, n + k) meets 0 <= n < k exactly once.
    return m * k + 1;
}

}  // namespace denjoy
