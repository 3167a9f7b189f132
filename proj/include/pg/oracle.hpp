#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "pg/game.hpp"
#include "pg/solution.hpp"
#include "pg/vertex_set.hpp"

namespace pg {

/// Classic recursive algorithm (attractor to the top-priority vertices,
/// recurse, re-attract the opponent's sub-dominion), run on an explicit frame
/// stack. Self-contained: shares no attractor or SCC code with the solver.
/// `active`, when given, must induce a left-total subgame.
Solution zielonka(const ParityGame& g,
                  std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);
Solution zielonka(const ParityGame& g, const VertexSet& active,
                  std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt);

struct BruteForceOptions {
    /// Bound on the number of memoryless strategies enumerated per pass.
    std::uint64_t max_strategies = 1'000'000;
};

/// Raised instead of silently truncating the enumeration.
struct EnumerationBound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Enumerates all memoryless strategies of the player with the smaller
/// strategy space; a vertex is won iff some strategy leaves the opponent no
/// path to a cycle they win (cycle winners by iterated SCC decomposition).
/// The opponent's witness strategy comes from a second enumeration restricted
/// to their winning region.
Solution brute_force(const ParityGame& g, const BruteForceOptions& opts = {});

struct Verdict {
    bool accepted = false;
    std::vector<Violation> violations;
};

/// Accepts iff, for each player, the winning region is closed under opponent
/// moves, every owned vertex has a strategy edge staying inside, and no
/// strategy-consistent cycle is won by the opponent (iterated SCC check).
/// Implemented without the solver's attractor machinery.
Verdict verify(const ParityGame& g, const Solution& s);

} // namespace pg
