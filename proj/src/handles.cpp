#include "denjoy/handles.hpp"

#include <numeric>
#include <stdexcept>

#include "denjoy/errors.hpp"

namespace denjoy {

std::int64_t boundary_euler(const HandlePiece& piece) {
    switch (piece.kind) {
        case PieceKind::solid_torus:
            return 0;
        case PieceKind::ball:
            return 2;
        case PieceKind::thickened_surface:
            if (piece.boundary_count == 0) {
                throw std::invalid_argument("closed surface times an interval has a disconnected boundary");
            }
            return 2 * (2 - 2 * static_cast<std::int64_t>(piece.genus) - static_cast<std::int64_t>(piece.boundary_count));
    }
    throw std::invalid_argument("unknown piece kind");
}

BoundarySurface boundary_genus(const HandleRecord& record) {
    const std::size_t n = record.pieces.size();
    if (n == 0) throw DisconnectedError("handle record has no pieces");
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    BoundarySurface out;
    for (const HandlePiece& p : record.pieces) out.euler_characteristic += boundary_euler(p);
    out.notes.push_back(std::to_string(n) + " pieces, boundary chi " + std::to_string(out.euler_characteristic));
    for (const OneHandle& h : record.one_handles) {
        if (h.from >= n || h.to >= n) throw std::invalid_argument("1-handle attached to a missing piece");
        parent[find(h.from)] = find(h.to);
        out.euler_characteristic -= 2;
        out.orientable = out.orientable && h.orientable;
    }
    for (std::size_t i = 1; i < n; ++i) {
        if (find(i) != find(0)) throw DisconnectedError("piece " + std::to_string(i) + " is not joined to piece 0");
    }
    out.notes.push_back(std::to_string(record.one_handles.size()) + " one-handles, boundary chi " +
                        std::to_string(out.euler_characteristic));
    if (out.orientable) {
        out.genus = static_cast<std::uint64_t>(1 - out.euler_characteristic / 2);
        out.notes.push_back("orientable boundary of genus " + std::to_string(out.genus));
    } else {
        out.genus = static_cast<std::uint64_t>(2 - out.euler_characteristic);
        out.notes.push_back("non-orientable boundary with " + std::to_string(out.genus) + " cross-caps");
    }
    return out;
}

}  // namespace denjoy
