#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace denjoy {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;           // success, Equivalent, all checks pass
inline constexpr int kExitNegative = 1;     // NotEquivalent, a failed check, a library error
inline constexpr int kExitUnknown = 2;      // UnknownUpToDepth
inline constexpr int kExitUsage = 3;        // bad flags, unparsable input, I/O failure

struct RunConfig {
    std::string subcommand;
    std::string alpha = "[0;(2)]";
    std::string other_alpha;
    std::uint64_t depth = 30;
    std::uint64_t resolution = 3;
    std::uint64_t seed = 0;
    std::string tol = "1e-12";
    std::string out;

    std::uint64_t bound = 2;
    std::uint64_t samples = 1000;
    std::uint64_t iterations = 100;
    std::uint64_t density_budget = 100000;
    std::uint64_t steps = 10;
    std::string start = "gap:0,0,0";
    std::string expression;
    std::string complex_kind = "torus";
    std::uint64_t orbits = 1;
    std::uint64_t truncation = 1;
    std::string permutation;
    bool edges = false;
};

// Runs `denjoy <args...>` (args exclude the program name). Reports go to
// `out`, diagnostics to `err`; the return value is the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace denjoy
