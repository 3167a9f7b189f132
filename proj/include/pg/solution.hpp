#pragma once

#include <cstdint>
#include <vector>

#include "pg/strategy.hpp"
#include "pg/types.hpp"
#include "pg/vertex_set.hpp"

namespace pg {

/// Winning-region partition plus the winners' strategies. `winner` entries of
/// -1 mark vertices not (yet) decided, so the same type carries the partial
/// results of preprocessing.
struct Solution {
    static constexpr std::int8_t undecided = -1;

    std::vector<std::int8_t> winner;
    Strategy strategy_even;
    Strategy strategy_odd;

    Solution() = default;
    explicit Solution(vertex_t n)
        : winner(static_cast<std::size_t>(n), undecided), strategy_even(n), strategy_odd(n) {}

    vertex_t vertex_count() const { return static_cast<vertex_t>(winner.size()); }

    bool decided(vertex_t v) const { return winner[static_cast<std::size_t>(v)] != undecided; }

    bool total() const {
        for (std::int8_t w : winner)
            if (w == undecided) return false;
        return true;
    }

    Player winner_of(vertex_t v) const {
        return static_cast<Player>(winner[static_cast<std::size_t>(v)]);
    }

    void set_winner(vertex_t v, Player p) {
        winner[static_cast<std::size_t>(v)] = static_cast<std::int8_t>(p);
    }

    Strategy& strategy(Player p) { return p == Player::even ? strategy_even : strategy_odd; }
    const Strategy& strategy(Player p) const {
        return p == Player::even ? strategy_even : strategy_odd;
    }

    VertexSet region(Player p) const {
        VertexSet out(vertex_count());
        for (vertex_t v = 0; v < vertex_count(); ++v)
            if (winner[static_cast<std::size_t>(v)] == static_cast<std::int8_t>(p)) out.insert(v);
        return out;
    }
};

} // namespace pg
