#pragma once

#include "pg/game.hpp"
#include "pg/solution.hpp"
#include "pg/vertex_set.hpp"

namespace pg {

struct SelfLoopResult {
    Solution partial;    // winners and strategies on the solved part only
    VertexSet remaining; // the untouched subgame
};

/// Preprocessing pass: a vertex whose self-loop priority matches its owner's
/// parity is won by its owner looping forever; a vertex whose only move is a
/// losing self-loop is won by the opponent. Each player's standard attractor
/// of their vertices extends the solved part.
SelfLoopResult solve_self_loops(const ParityGame& g);

} // namespace pg
