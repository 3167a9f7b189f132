#pragma once

#include <cstdint>
#include <vector>

#include "pg/game.hpp"
#include "pg/strategy.hpp"
#include "pg/tangle.hpp"
#include "pg/types.hpp"
#include "pg/vertex_set.hpp"

namespace pg {

struct AttractorResult {
    VertexSet attracted;               // the set Z, seed included
    Strategy strategy;                 // attracting player's choices into Z
    std::vector<int> attracted_tangles; // tangle ids in firing order
    std::uint64_t steps = 0;           // vertices and tangles processed
};

/// Least fixpoint of seed ∪ {alpha-vertices with a successor in Z} ∪
/// {opponent vertices with every active successor in Z}, edges restricted to
/// the subgame. Backward search with per-vertex remaining-outdegree counters,
/// O(n + m) in the active part. Strategy tie-break: the successor whose
/// attraction event came first. Throws std::invalid_argument when a seed
/// vertex is not active.
AttractorResult attr(const SubgameMask& sub, Player player, const VertexSet& seed);

/// attr extended by the fourth clause: all vertices of a tangle of `player`
/// join Z once every escape it still has inside the subgame is in Z (at
/// least one such escape must exist and be attracted; escape targets outside
/// the subgame are resolved in higher regions of the enclosing decomposition
/// and do not hold the tangle back). Only tangles lying entirely in the
/// subgame participate. Witness strategies merge in firing order and never
/// overwrite existing choices. With an empty store this is exactly attr.
AttractorResult tattr(const SubgameMask& sub, const TangleStore& store, Player player,
                      const VertexSet& seed);

} // namespace pg
