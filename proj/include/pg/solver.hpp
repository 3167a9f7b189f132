#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "pg/errors.hpp"
#include "pg/game.hpp"
#include "pg/solution.hpp"
#include "pg/tangle.hpp"

namespace pg {

enum class Variant { tl, atl, otftl, otfatl };

const char* variant_name(Variant v);
std::optional<Variant> variant_from_name(std::string_view name);

struct SolverConfig {
    Variant variant = Variant::tl;
    bool skip_reduction = false;      // only mine regions whose top vertices cannot escape down
    bool self_loop_preprocess = false;
    bool validate_tangles = false;    // run check_tangle / check_dominion on every emission
    std::ostream* trace = nullptr;    // `tangle <id> p=<p> V={..} esc={..}` per learned tangle
    std::uint64_t max_tangles = 10'000'000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct SolverStats {
    std::uint64_t tangles_learned = 0;     // stored tangles plus returned dominions
    std::uint64_t dominions_found = 0;
    std::uint64_t search_calls = 0;
    std::uint64_t decomposition_iterations = 0; // one per computed region
    std::uint64_t turns = 0;                    // alternating only, one per player switch
    std::uint64_t tangle_attractions = 0;       // tangle firings inside the attractor
    std::uint64_t max_region_count = 0;         // most regions live in one decomposition

    SolverStats& operator+=(const SolverStats& o);
    std::string to_line() const;        // single-line key=value record
    std::string to_json_string() const; // JSON object with the same keys
};

struct SearchResult {
    Tangle dominion;   // escapes empty; winner = parity of its priority
    SolverStats stats; // delta for this call
};

/// One dominion search over the `active` subgame; `store` is read and updated
/// in place (new tangles merged, the returned dominion is not stored).
SearchResult search(const ParityGame& g, const VertexSet& active, TangleStore& store,
                    const SolverConfig& cfg = {});

/// Players take turns mining only their own regions; the final decomposition
/// of a turn is re-scanned for the other player on switch.
SearchResult search_alternating(const ParityGame& g, const VertexSet& active, TangleStore& store,
                                const SolverConfig& cfg = {});

/// New tangles immediately refine the decomposition: regions at or below the
/// highest region attracting a new tangle are recomputed instead of
/// restarting from the top.
SearchResult search_otf(const ParityGame& g, const VertexSet& active, TangleStore& store,
                        const SolverConfig& cfg = {});

/// Full solve: repeatedly search, attract the dominion for its winner, remove
/// it and prune the store (the pruned store carries over to the next search).
std::pair<Solution, SolverStats> solve(const ParityGame& g, const SolverConfig& cfg = {});

} // namespace pg
