#pragma once

// Shared helpers for the test suites: fixture loading, small-game builders,
// and naive reference implementations of the fixpoints (literal repeated-scan
// evaluation, independent of the engine's backward searches).

#include <algorithm>
#include <bit>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pg/attractor.hpp"
#include "pg/game.hpp"
#include "pg/generator.hpp"
#include "pg/pgsolver.hpp"
#include "pg/solution.hpp"
#include "pg/tangle.hpp"

namespace pgtest {

using namespace pg;

inline std::string fixture_path(const std::string& name) {
    return std::string(PG_FIXTURE_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline ParityGame load_fixture(const std::string& name) {
    return parse_pgsolver(slurp(fixture_path(name)));
}

inline ParityGame make_game(std::vector<std::int32_t> priorities, std::vector<Player> owners,
                            std::vector<std::vector<vertex_t>> succs) {
    return ParityGame::from_parts(std::move(priorities), std::move(owners), std::move(succs));
}

// Fig-style desk games, vertices a..e / a..h mapped to 0..4 / 0..7.
inline ParityGame fig1() {
    return make_game({6, 5, 2, 1, 3},
                     {Player::even, Player::even, Player::even, Player::odd, Player::even},
                     {{1}, {3}, {1, 4}, {4, 0}, {2}});
}

inline ParityGame fig4() {
    return make_game(
        {0, 2, 1, 3, 0, 4, 1, 3},
        {Player::even, Player::even, Player::even, Player::even, Player::odd, Player::odd,
         Player::odd, Player::odd},
        {{1, 4}, {2}, {3, 2}, {0}, {0, 5}, {6}, {7, 6}, {4}});
}

inline VertexSet set_of(vertex_t universe, std::initializer_list<vertex_t> vs) {
    return VertexSet(universe, vs);
}

// ---------------------------------------------------------------------------
// naive oracles: the fixpoint expressions evaluated literally
// ---------------------------------------------------------------------------

// mu Z. A ∪ {alpha-vertex with an active successor in Z}
//        ∪ {opponent vertex whose active successors all lie in Z}
inline VertexSet naive_attr(const ParityGame& g, const VertexSet& active, Player alpha,
                            const VertexSet& seed) {
    VertexSet z = seed;
    bool changed = true;
    while (changed) {
        changed = false;
        for (vertex_t v : active) {
            if (z.contains(v)) continue;
            bool take;
            if (g.owner(v) == alpha) {
                take = false;
                for (vertex_t s : g.successors(v))
                    if (active.contains(s) && z.contains(s)) take = true;
            } else {
                take = true;
                for (vertex_t s : g.successors(v))
                    if (active.contains(s) && !z.contains(s)) take = false;
            }
            if (take) {
                z.insert(v);
                changed = true;
            }
        }
    }
    return z;
}

// plus the tangle clause: every vertex of a tangle of alpha joins Z once the
// tangle lies in the subgame and its subgame escapes are nonempty and all in Z
inline VertexSet naive_tattr(const ParityGame& g, const VertexSet& active,
                             const TangleStore& store, Player alpha, const VertexSet& seed) {
    VertexSet z = seed;
    bool changed = true;
    while (changed) {
        changed = false;
        VertexSet grown = naive_attr(g, active, alpha, z);
        if (grown.size() != z.size()) {
            z = grown;
            changed = true;
        }
        for (const Tangle& t : store.tangles()) {
            if (t.player != alpha) continue;
            bool inside = true;
            for (vertex_t v : t.vertices)
                if (!active.contains(v)) inside = false;
            if (!inside) continue;
            bool any_escape = false, all_in_z = true;
            for (vertex_t e : t.escapes) {
                if (!active.contains(e)) continue; // resolved in higher regions
                any_escape = true;
                if (!z.contains(e)) all_in_z = false;
            }
            if (!any_escape || !all_in_z) continue;
            for (vertex_t v : t.vertices)
                if (z.insert(v)) changed = true;
        }
    }
    return z;
}

// nu Z. region ∩ ({opponent vertex with all subgame successors in Z} ∪
//                 {alpha vertex with sigma(v) in Z})
inline VertexSet naive_reduce(const ParityGame& g, const VertexSet& active,
                              const VertexSet& region, const Strategy& sigma, Player alpha) {
    VertexSet z = region;
    bool changed = true;
    while (changed) {
        changed = false;
        for (vertex_t v : region) {
            if (!z.contains(v)) continue;
            bool keep;
            if (g.owner(v) == alpha) {
                keep = sigma.defined(v) && z.contains(sigma[v]);
            } else {
                keep = true;
                for (vertex_t s : g.successors(v))
                    if (active.contains(s) && !z.contains(s)) keep = false;
            }
            if (!keep) {
                z.erase(v);
                changed = true;
            }
        }
    }
    return z;
}

// deterministic corpus of random games: game i has 1 + (i mod max_n) vertices
inline ParityGame corpus_game(std::size_t i, vertex_t max_n, std::int32_t min_outdeg,
                              std::int32_t max_outdeg, std::uint64_t seed_base,
                              std::int32_t max_priority = -1) {
    GenSpec spec;
    spec.vertex_count = static_cast<vertex_t>(1 + (i % static_cast<std::size_t>(max_n)));
    spec.max_priority = max_priority;
    spec.seed = seed_base + i;
    if (spec.vertex_count == 1) {
        spec.self_loops = true;
        spec.min_outdeg = spec.max_outdeg = 1;
    } else {
        const std::int32_t cap = spec.vertex_count - 1;
        spec.min_outdeg = std::clamp<std::int32_t>(min_outdeg, 1, cap);
        spec.max_outdeg = std::clamp<std::int32_t>(max_outdeg, spec.min_outdeg, cap);
    }
    return generate(spec);
}

// Enumerates every game with n <= max_n vertices, priorities in
// [0, max_priority], both owners, and every nonempty successor set of size
// <= max_outdeg. Calls fn(game) for each.
template <class Fn>
void enumerate_small_games(vertex_t max_n, std::int32_t max_priority, std::size_t max_outdeg,
                           Fn&& fn) {
    for (vertex_t n = 1; n <= max_n; ++n) {
        // successor-set choices per vertex
        std::vector<std::vector<vertex_t>> succ_choices;
        const std::uint32_t subsets = 1u << n;
        for (std::uint32_t mask = 1; mask < subsets; ++mask) {
            if (static_cast<std::size_t>(std::popcount(mask)) > max_outdeg) continue;
            std::vector<vertex_t> s;
            for (vertex_t v = 0; v < n; ++v)
                if (mask & (1u << v)) s.push_back(v);
            succ_choices.push_back(std::move(s));
        }
        const std::size_t per_vertex =
            succ_choices.size() * static_cast<std::size_t>(max_priority + 1) * 2;
        std::vector<std::size_t> odo(static_cast<std::size_t>(n), 0);
        for (;;) {
            std::vector<std::int32_t> prio(static_cast<std::size_t>(n));
            std::vector<Player> owner(static_cast<std::size_t>(n));
            std::vector<std::vector<vertex_t>> succ(static_cast<std::size_t>(n));
            for (vertex_t v = 0; v < n; ++v) {
                std::size_t code = odo[static_cast<std::size_t>(v)];
                prio[static_cast<std::size_t>(v)] =
                    static_cast<std::int32_t>(code % static_cast<std::size_t>(max_priority + 1));
                code /= static_cast<std::size_t>(max_priority + 1);
                owner[static_cast<std::size_t>(v)] = code % 2 ? Player::odd : Player::even;
                code /= 2;
                succ[static_cast<std::size_t>(v)] = succ_choices[code];
            }
            fn(ParityGame::from_parts(std::move(prio), std::move(owner), std::move(succ)));
            vertex_t carry = 0;
            while (carry < n) {
                if (++odo[static_cast<std::size_t>(carry)] < per_vertex) break;
                odo[static_cast<std::size_t>(carry)] = 0;
                ++carry;
            }
            if (carry == n) break;
        }
    }
}

inline std::string winners_of(const Solution& s) {
    std::string out;
    for (vertex_t v = 0; v < s.vertex_count(); ++v)
        out += s.decided(v) ? (s.winner_of(v) == Player::even ? '0' : '1') : '?';
    return out;
}

} // namespace pgtest
