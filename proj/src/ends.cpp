#include "denjoy/ends.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "denjoy/errors.hpp"

namespace denjoy {

namespace {

std::uint64_t level(const GapIndex& g) { return static_cast<std::uint64_t>(g.n < 0 ? -g.n : g.n); }

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

FiniteEnds finite_ends(std::vector<std::size_t> permutation) {
    const std::size_t m = permutation.size();
    if (m == 0) throw std::invalid_argument("a permutation of the ends needs at least one end");
    std::vector<bool> hit(m, false);
    for (std::size_t v : permutation) {
        if (v < 1 || v > m || hit[v - 1]) throw std::invalid_argument("end map is not a permutation of 1.." + std::to_string(m));
        hit[v - 1] = true;
    }
    return FiniteEnds{std::move(permutation)};
}

CantorEnds induced_end_map(const DenjoyMap& map, std::uint64_t resolution) {
    if (resolution + 1 > map.depth()) {
        throw ResolvedDepthError("end map at resolution " + std::to_string(resolution) + " needs gaps up to |n| = " +
                                     std::to_string(resolution + 1) + " but N = " + std::to_string(map.depth()),
                                 static_cast<long long>(resolution + 1));
    }
    // Circular order of the gaps |n| <= resolution + 1; slot s is the open
    // stretch between fine gaps s and s + 1.
    std::vector<GapIndex> fine;
    for (const ResolvedGap& g : map.sorted_gaps()) {
        if (level(g.index) <= resolution + 1) fine.push_back(g.index);
    }
    const std::size_t slots = fine.size();
    auto rank = [&](const GapIndex& g) {
        return static_cast<std::size_t>(std::find(fine.begin(), fine.end(), g) - fine.begin());
    };

    CantorEnds out;
    out.resolution = resolution;
    std::vector<std::size_t> coarse_rank;
    for (std::size_t s = 0; s < slots; ++s) {
        if (level(fine[s]) <= resolution) coarse_rank.push_back(s);
    }
    const std::size_t arcs = coarse_rank.size();
    std::vector<std::size_t> arc_of_slot(slots);
    for (std::size_t r = 0; r < arcs; ++r) {
        const std::size_t from = coarse_rank[r];
        const std::size_t to = coarse_rank[(r + 1) % arcs];
        out.arcs.push_back({fine[from], fine[to]});
        for (std::size_t s = from;; s = (s + 1) % slots) {
            arc_of_slot[s] = r;
            if ((s + 1) % slots == to) break;
        }
    }

    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t r = 0; r < arcs; ++r) {
        const GapIndex a{out.arcs[r].after.orbit_id, out.arcs[r].after.n + 1};
        const GapIndex b{out.arcs[r].before.orbit_id, out.arcs[r].before.n + 1};
        const std::size_t from = rank(a);
        const std::size_t to = rank(b);
        for (std::size_t s = from;; s = (s + 1) % slots) {
            edges.insert({r, arc_of_slot[s]});
            if ((s + 1) % slots == to) break;
        }
    }
    out.edges.assign(edges.begin(), edges.end());
    return out;
}

std::size_t end_count(const EndsModel& model) {
    if (const auto* c = std::get_if<CantorEnds>(&model)) {
        DisjointSets sets(c->arcs.size());
        for (const auto& [a, b] : c->edges) sets.unite(a, b);
        std::size_t count = 0;
        for (std::size_t i = 0; i < c->arcs.size(); ++i) count += sets.find(i) == i;
        return count;
    }
    const auto& perm = std::get<FiniteEnds>(model).permutation;
    std::vector<bool> seen(perm.size(), false);
    std::size_t cycles = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = perm[j] - 1) seen[j] = true;
    }
    return cycles;
}

nlohmann::json transition_json(const CantorEnds& ends) {
    nlohmann::json arcs = nlohmann::json::array();
    for (std::size_t i = 0; i < ends.arcs.size(); ++i) {
        const ArcBounds& a = ends.arcs[i];
        arcs.push_back({{"index", i},
                        {"after", {a.after.orbit_id, a.after.n}},
                        {"before", {a.before.orbit_id, a.before.n}}});
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [a, b] : ends.edges) edges.push_back({a, b});
    return {{"resolution", ends.resolution}, {"arcs", arcs}, {"edges", edges}};
}

nlohmann::json end_count_json(const EndsModel& model) {
    nlohmann::json out;
    if (const auto* c = std::get_if<CantorEnds>(&model)) out["resolution"] = c->resolution;
    else out["resolution"] = nullptr;
    out["count"] = end_count(model);
    return out;
}

}  // namespace denjoy
