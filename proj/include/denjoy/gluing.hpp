#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace denjoy {

enum class BlockKind { denjoy, power, disk, annulus, shift_orientable, shift_nonorientable, solid_torus, glue };

// Expression tree of mapping-torus building blocks:
//   denjoy(m)            mapping torus of the sphere map with m blown orbits
//   power(block, k)      the k-th power of a denjoy block
//   disk(), annulus()    the Y^1 and Y^2 blocks (a 1-handle on one torus
//                        boundary, or joining two)
//   shift_or(g, n)       shift of copies of S_{g,n,1}, glued into a tube
//   shift_nonor(g, n)    shift of copies of N_{g,n,1}, glued into a tube
//   solid_torus()        a piece with one torus boundary
//   glue(e1, e2, ...)    all children glued along matching boundaries
struct GluingExpression {
    BlockKind kind = BlockKind::denjoy;
    std::uint64_t m = 1;
    std::uint64_t k = 1;
    std::uint64_t g = 0;
    std::uint64_t n = 0;
    std::vector<GluingExpression> children;

    static GluingExpression denjoy(std::uint64_t m);
    static GluingExpression power(GluingExpression block, std::uint64_t k);
    static GluingExpression disk();
    static GluingExpression annulus();
    static GluingExpression shift_orientable(std::uint64_t g, std::uint64_t n);
    static GluingExpression shift_nonorientable(std::uint64_t g, std::uint64_t n);
    static GluingExpression solid_torus();
    static GluingExpression glue(std::vector<GluingExpression> parts);

    friend bool operator==(const GluingExpression&, const GluingExpression&) = default;
};

// Prefix syntax, e.g. "glue(denjoy(m=1), shift_or(g=1, n=0))". Integer
// arguments may be named or positional. Throws ParseError.
GluingExpression parse_gluing(std::string_view text);

// Canonical text with named arguments; parse_gluing(to_string(e)) == e.
std::string to_string(const GluingExpression& e);

struct ManifoldDescriptor {
    std::uint64_t genus = 0;
    bool orientable = true;
    std::vector<std::string> trace;
};

// Interior of the glued handlebody. Gluing is associative: the tree is
// flattened, then each torus or tube requirement is matched, in order, to the
// first free boundary of another block. Drilling the tube around a flowline
// of a denjoy block adds one handle. BoundaryMismatchError for unmatched
// requirements or blocks left unglued.
ManifoldDescriptor glue_eval(const GluingExpression& e);

// {genus, orientable, trace}
nlohmann::json to_json(const ManifoldDescriptor& d);

}  // namespace denjoy
