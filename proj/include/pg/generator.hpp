#pragma once

#include <cstdint>

#include "pg/game.hpp"

namespace pg {

/// Random-game recipe in the style of PGSolver's randomgame: N vertices,
/// priorities uniform over [0, max_priority] inclusive, owners uniform,
/// out-degrees uniform in [min_outdeg, max_outdeg], successors sampled
/// without replacement (excluding the vertex itself unless self_loops).
/// Deterministic per (spec, seed) across platforms: the sampler uses its own
/// bounded-draw routine rather than std distributions.
struct GenSpec {
    vertex_t vertex_count = 0;
    std::int32_t max_priority = -1; // -1: defaults to vertex_count
    std::int32_t min_outdeg = 1;
    std::int32_t max_outdeg = 2;
    bool self_loops = false;
    std::uint64_t seed = 0;
};

/// Throws std::invalid_argument on an infeasible spec (needs
/// 1 <= min_outdeg <= max_outdeg <= N-1, or <= N with self-loops).
ParityGame generate(const GenSpec& spec);

} // namespace pg
