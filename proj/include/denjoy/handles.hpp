#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace denjoy {

enum class PieceKind { solid_torus, ball, thickened_surface };

// A solid torus, a 3-ball, or S_{g,b} x [0,1] with b >= 1 boundary circles
// (so that its boundary is connected).
struct HandlePiece {
    PieceKind kind = PieceKind::ball;
    std::uint64_t genus = 0;
    std::uint64_t boundary_count = 0;

    static HandlePiece solid_torus() { return {PieceKind::solid_torus, 0, 0}; }
    static HandlePiece ball() { return {PieceKind::ball, 0, 0}; }
    static HandlePiece thickened_surface(std::uint64_t g, std::uint64_t b) {
        return {PieceKind::thickened_surface, g, b};
    }
};

// 1-handle attached along one disk in each of two pieces (possibly the same
// one). A non-orientable handle reverses orientation across its core.
struct OneHandle {
    std::size_t from = 0;
    std::size_t to = 0;
    bool orientable = true;
};

struct HandleRecord {
    std::vector<HandlePiece> pieces;
    std::vector<OneHandle> one_handles;
};

struct BoundarySurface {
    std::int64_t euler_characteristic = 0;
    // Orientable genus 1 - chi/2, or the number of cross-caps 2 - chi.
    std::uint64_t genus = 0;
    bool orientable = true;
    std::vector<std::string> notes;
};

// Euler characteristic of the boundary of one piece.
std::int64_t boundary_euler(const HandlePiece& piece);

// Boundary surface of the pieces with all 1-handles attached:
// chi = sum chi(boundary of piece) - 2 * #handles. DisconnectedError if the
// handles do not join every piece.
BoundarySurface boundary_genus(const HandleRecord& record);

}  // namespace denjoy
