#include "denjoy/gluing.hpp"

#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "denjoy/errors.hpp"

namespace denjoy {

GluingExpression GluingExpression::denjoy(std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("denjoy block needs m >= 1");
    GluingExpression e;
    e.kind = BlockKind::denjoy;
    e.m = m;
    return e;
}

GluingExpression GluingExpression::power(GluingExpression block, std::uint64_t k) {
    if (k == 0) throw std::invalid_argument("power needs k >= 1");
    if (block.kind != BlockKind::denjoy && block.kind != BlockKind::power) {
        throw std::invalid_argument("power applies to denjoy blocks only");
    }
    GluingExpression e;
    e.kind = BlockKind::power;
    e.k = k;
    e.children.push_back(std::move(block));
    return e;
}

GluingExpression GluingExpression::disk() {
    GluingExpression e;
    e.kind = BlockKind::disk;
    return e;
}

GluingExpression GluingExpression::annulus() {
    GluingExpression e;
    e.kind = BlockKind::annulus;
    return e;
}

GluingExpression GluingExpression::shift_orientable(std::uint64_t g, std::uint64_t n) {
    GluingExpression e;
    e.kind = BlockKind::shift_orientable;
    e.g = g;
    e.n = n;
    return e;
}

GluingExpression GluingExpression::shift_nonorientable(std::uint64_t g, std::uint64_t n) {
    if (g == 0) throw std::invalid_argument("non-orientable shift block needs g >= 1");
    GluingExpression e;
    e.kind = BlockKind::shift_nonorientable;
    e.g = g;
    e.n = n;
    return e;
}

GluingExpression GluingExpression::solid_torus() {
    GluingExpression e;
    e.kind = BlockKind::solid_torus;
    return e;
}

GluingExpression GluingExpression::glue(std::vector<GluingExpression> parts) {
    if (parts.size() < 2) throw std::invalid_argument("glue needs at least two parts");
    GluingExpression e;
    e.kind = BlockKind::glue;
    e.children = std::move(parts);
    return e;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    GluingExpression parse() {
        GluingExpression e = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    struct Args {
        std::vector<GluingExpression> exprs;
        std::vector<std::uint64_t> positional;
        std::map<std::string, std::uint64_t> named;
    };

    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("gluing expression, column " + std::to_string(pos_ + 1) + ": " + why);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    std::string identifier() {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_) fail("expected a block name");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::uint64_t integer() {
        skip_space();
        const std::size_t start = pos_;
        std::uint64_t value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            const auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
            if (value > (UINT64_MAX - digit) / 10) fail("integer too large");
            value = value * 10 + digit;
            ++pos_;
        }
        if (start == pos_) fail("expected a nonnegative integer");
        return value;
    }

    bool at_digit() {
        skip_space();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    Args arguments() {
        Args args;
        expect('(');
        if (accept(')')) return args;
        do {
            if (at_digit()) {
                if (!args.named.empty()) fail("positional argument after a named one");
                args.positional.push_back(integer());
                continue;
            }
            const std::size_t mark = pos_;
            const std::string name = identifier();
            if (accept('=')) {
                if (args.named.count(name) != 0) fail("argument '" + name + "' given twice");
                args.named[name] = integer();
            } else {
                pos_ = mark;
                args.exprs.push_back(expression());
            }
        } while (accept(','));
        expect(')');
        return args;
    }

    // Binds positional then named integers to `names`; every name is
    // required unless it has a default.
    std::vector<std::uint64_t> bind(const std::string& block, Args& args, const std::vector<std::string>& names,
                                    const std::vector<std::optional<std::uint64_t>>& defaults) {
        if (args.positional.size() > names.size()) fail(block + " takes " + std::to_string(names.size()) + " integers");
        std::vector<std::uint64_t> out;
        for (std::size_t i = 0; i < names.size(); ++i) {
            const auto it = args.named.find(names[i]);
            if (i < args.positional.size()) {
                if (it != args.named.end()) fail(block + ": '" + names[i] + "' given twice");
                out.push_back(args.positional[i]);
            } else if (it != args.named.end()) {
                out.push_back(it->second);
                args.named.erase(it);
            } else if (defaults[i]) {
                out.push_back(*defaults[i]);
            } else {
                fail(block + " needs '" + names[i] + "'");
            }
        }
        if (!args.named.empty()) fail(block + " has no argument '" + args.named.begin()->first + "'");
        return out;
    }

    GluingExpression expression() {
        const std::string name = identifier();
        Args args = arguments();
        auto no_blocks = [&] {
            if (!args.exprs.empty()) fail(name + " takes no sub-expressions");
        };
        try {
            if (name == "denjoy") {
                no_blocks();
                return GluingExpression::denjoy(bind(name, args, {"m"}, {1})[0]);
            }
            if (name == "power") {
                if (args.exprs.size() != 1) fail("power takes exactly one block");
                return GluingExpression::power(std::move(args.exprs[0]), bind(name, args, {"k"}, {std::nullopt})[0]);
            }
            if (name == "disk" || name == "annulus" || name == "solid_torus") {
                no_blocks();
                bind(name, args, {}, {});
                if (name == "disk") return GluingExpression::disk();
                if (name == "annulus") return GluingExpression::annulus();
                return GluingExpression::solid_torus();
            }
            if (name == "shift_or" || name == "shift_nonor") {
                no_blocks();
                const auto v = bind(name, args, {"g", "n"}, {std::nullopt, std::nullopt});
                return name == "shift_or" ? GluingExpression::shift_orientable(v[0], v[1])
                                          : GluingExpression::shift_nonorientable(v[0], v[1]);
            }
            if (name == "glue") {
                bind(name, args, {}, {});
                return GluingExpression::glue(std::move(args.exprs));
            }
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
        fail("unknown block '" + name + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

// One flattened block with its boundary interface.
struct Block {
    std::string label;
    std::int64_t euler = 0;
    bool orientable = true;
    std::uint64_t free_tori = 0;
    bool offers_tube = false;
    std::uint64_t needs_tori = 0;
    bool needs_tube = false;
    std::vector<std::string> notes;
};

void flatten(const GluingExpression& e, std::vector<Block>& out) {
    if (e.kind == BlockKind::glue) {
        for (const auto& c : e.children) flatten(c, out);
        return;
    }
    Block b;
    b.label = to_string(e);
    switch (e.kind) {
        case BlockKind::denjoy:
        case BlockKind::power: {
            std::uint64_t orbits = 1;
            const GluingExpression* cur = &e;
            while (cur->kind == BlockKind::power) {
                orbits *= cur->k;
                cur = &cur->children.front();
            }
            orbits *= cur->m;
            b.euler = -static_cast<std::int64_t>(orbits);
            b.offers_tube = true;
            b.notes.push_back(b.label + ": " + std::to_string(orbits) + " gap orbits, core V_" +
                              std::to_string(orbits + 1));
            break;
        }
        case BlockKind::solid_torus:
            b.free_tori = 1;
            b.notes.push_back(b.label + ": V_1 with one torus boundary");
            break;
        case BlockKind::disk:
            b.euler = -1;
            b.needs_tori = 1;
            b.notes.push_back(b.label + ": T^2 x I plus a 1-handle on one torus");
            break;
        case BlockKind::annulus:
            b.euler = -1;
            b.needs_tori = 2;
            b.notes.push_back(b.label + ": two T^2 x I joined by a 1-handle");
            break;
        case BlockKind::shift_orientable: {
            const std::uint64_t handles = 2 * e.g + e.n;
            b.euler = 1 - static_cast<std::int64_t>(handles);
            b.needs_tube = true;
            b.notes.push_back(b.label + ": ball with " + std::to_string(handles) + " orientable 1-handles");
            break;
        }
        case BlockKind::shift_nonorientable: {
            // g = 1; g = 2; g odd > 1; g even > 2.
            std::uint64_t twisted = 1;
            std::uint64_t straight = e.g - 1;
            if (e.g > 2 && e.g % 2 == 0) {
                twisted = 2;
                straight = e.g - 2;
            }
            straight += e.n;
            if (twisted + straight != e.g + e.n) throw std::logic_error("non-orientable handle count mismatch");
            b.euler = 1 - static_cast<std::int64_t>(twisted + straight);
            b.orientable = false;
            b.needs_tube = true;
            b.notes.push_back(b.label + ": ball with " + std::to_string(twisted) + " non-orientable and " +
                              std::to_string(straight) + " orientable 1-handles");
            break;
        }
        case BlockKind::glue:
            break;
    }
    out.push_back(std::move(b));
}

}  // namespace

GluingExpression parse_gluing(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const GluingExpression& e) {
    switch (e.kind) {
        case BlockKind::denjoy:
            return "denjoy(m=" + std::to_string(e.m) + ")";
        case BlockKind::power:
            return "power(" + to_string(e.children.front()) + ", k=" + std::to_string(e.k) + ")";
        case BlockKind::disk:
            return "disk()";
        case BlockKind::annulus:
            return "annulus()";
        case BlockKind::shift_orientable:
            return "shift_or(g=" + std::to_string(e.g) + ", n=" + std::to_string(e.n) + ")";
        case BlockKind::shift_nonorientable:
            return "shift_nonor(g=" + std::to_string(e.g) + ", n=" + std::to_string(e.n) + ")";
        case BlockKind::solid_torus:
            return "solid_torus()";
        case BlockKind::glue: {
            std::string out = "glue(";
            for (std::size_t i = 0; i < e.children.size(); ++i) out += (i ? ", " : "") + to_string(e.children[i]);
            return out + ")";
        }
    }
    return {};
}

ManifoldDescriptor glue_eval(const GluingExpression& e) {
    std::vector<Block> blocks;
    flatten(e, blocks);
    ManifoldDescriptor out;
    for (const Block& b : blocks) out.trace.insert(out.trace.end(), b.notes.begin(), b.notes.end());

    std::vector<std::size_t> parent(blocks.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto take = [&](std::size_t i, bool tube) -> std::size_t {
        for (std::size_t j = 0; j < blocks.size(); ++j) {
            if (j == i) continue;
            if (tube ? blocks[j].offers_tube : blocks[j].free_tori > 0) return j;
        }
        throw BoundaryMismatchError(blocks[i].label + " needs a free " + (tube ? "flowline tube" : "torus boundary") +
                                    " on another block");
    };

    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (std::uint64_t t = 0; t < blocks[i].needs_tori; ++t) {
            const std::size_t j = take(i, false);
            --blocks[j].free_tori;
            parent[find(i)] = find(j);
            out.trace.push_back(blocks[i].label + " glued to a torus boundary of " + blocks[j].label);
        }
        if (blocks[i].needs_tube) {
            const std::size_t j = take(i, true);
            blocks[j].offers_tube = false;
            blocks[j].euler -= 1;
            parent[find(i)] = find(j);
            out.trace.push_back("drill a tube around a flowline of " + blocks[j].label + ": one more handle");
            out.trace.push_back(blocks[i].label + " glued along the annulus of that tube");
        }
    }
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        if (find(i) != find(0)) {
            throw BoundaryMismatchError(blocks[i].label + " shares no boundary with " + blocks[0].label);
        }
    }

    std::int64_t euler = 0;
    for (const Block& b : blocks) {
        euler += b.euler;
        out.orientable = out.orientable && b.orientable;
    }
    out.genus = static_cast<std::uint64_t>(1 - euler);
    out.trace.push_back("chi = " + std::to_string(euler) + ", handlebody genus " + std::to_string(out.genus) +
                        (out.orientable ? "" : ", non-orientable"));
    return out;
}

nlohmann::json to_json(const ManifoldDescriptor& d) {
    return {{"genus", d.genus}, {"orientable", d.orientable}, {"trace", d.trace}};
}

}  // namespace denjoy
