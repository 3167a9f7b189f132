#include "pg/attractor.hpp"

#include <stdexcept>

#include "engine.hpp"

namespace pg {

namespace {

AttractorResult run(const SubgameMask& sub, const TangleStore* store, Player player,
                    const VertexSet& seed) {
    const ParityGame& g = *sub.game;
    const vertex_t n = g.vertex_count();
    for (vertex_t v : seed)
        if (!sub.active.contains(v))
            throw std::invalid_argument("attractor seed vertex " + std::to_string(v) +
                                        " is not active");

    detail::Arena arena(g);
    for (vertex_t v : sub.active) arena.region[static_cast<std::size_t>(v)] = detail::kFree;

    std::vector<vertex_t> seeds = seed.to_vector();
    // opponent vertices with no active successor are attracted outright
    for (vertex_t v : sub.active) {
        if (g.owner(v) == player || seed.contains(v)) continue;
        bool has_move = false;
        for (vertex_t s : g.successors(v))
            if (sub.active.contains(s)) {
                has_move = true;
                break;
            }
        if (!has_move) seeds.push_back(v);
    }

    std::vector<vertex_t> out;
    const detail::AttractOutcome outcome =
        detail::attract_region(arena, store, player, 0, seeds, out);

    AttractorResult res;
    res.attracted = VertexSet(n);
    res.strategy = Strategy(n);
    for (vertex_t v : out) {
        res.attracted.insert(v);
        if (g.owner(v) == player && arena.strategy[static_cast<std::size_t>(v)] != Strategy::none)
            res.strategy.set(v, arena.strategy[static_cast<std::size_t>(v)]);
    }
    res.attracted_tangles = outcome.fired_tangles;
    res.steps = outcome.steps;
    return res;
}

} // namespace

AttractorResult attr(const SubgameMask& sub, Player player, const VertexSet& seed) {
    return run(sub, nullptr, player, seed);
}

AttractorResult tattr(const SubgameMask& sub, const TangleStore& store, Player player,
                      const VertexSet& seed) {
    return run(sub, &store, player, seed);
}

} // namespace pg
