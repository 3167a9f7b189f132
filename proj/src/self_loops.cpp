#include "pg/self_loops.hpp"

#include "pg/attractor.hpp"

namespace pg {

SelfLoopResult solve_self_loops(const ParityGame& g) {
    const vertex_t n = g.vertex_count();
    SelfLoopResult res{Solution(n), VertexSet(n)};
    res.remaining.fill();

    VertexSet seed_even(n), seed_odd(n);
    VertexSet looping(n); // rule-1 vertices, strategy is the loop itself
    for (vertex_t v = 0; v < n; ++v) {
        if (!g.has_edge(v, v)) continue;
        const Player loop_winner = priority_winner(g.priority(v));
        if (g.owner(v) == loop_winner) {
            (loop_winner == Player::even ? seed_even : seed_odd).insert(v);
            looping.insert(v);
        } else if (g.successors(v).size() == 1) {
            // forced losing cycle
            (loop_winner == Player::even ? seed_even : seed_odd).insert(v);
        }
    }

    for (Player p : {Player::even, Player::odd}) {
        const VertexSet& seed = p == Player::even ? seed_even : seed_odd;
        if (seed.empty()) continue;
        SubgameMask sub(g, res.remaining);
        AttractorResult att = attr(sub, p, seed);
        for (vertex_t v : att.attracted) {
            res.partial.set_winner(v, p);
            res.remaining.erase(v);
            if (g.owner(v) == p) {
                if (looping.contains(v))
                    res.partial.strategy(p).set(v, v);
                else if (att.strategy.defined(v))
                    res.partial.strategy(p).set(v, att.strategy[v]);
            }
        }
    }
    return res;
}

} // namespace pg
