#include "pg/generator.hpp"

#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

namespace pg {

namespace {

// rejection-free bounded draw on top of the raw engine output; stable across
// standard libraries, unlike uniform_int_distribution
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    // bound >= 1
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit) return x % bound;
    }
}

} // namespace

ParityGame generate(const GenSpec& spec) {
    const vertex_t n = spec.vertex_count;
    const std::int32_t max_priority = spec.max_priority < 0 ? n : spec.max_priority;
    const vertex_t candidates = spec.self_loops ? n : n - 1;
    if (n < 1) throw std::invalid_argument("vertex_count must be positive");
    if (spec.min_outdeg < 1 || spec.min_outdeg > spec.max_outdeg ||
        spec.max_outdeg > candidates)
        throw std::invalid_argument("infeasible out-degree range");

    std::mt19937_64 rng(spec.seed);
    std::vector<std::int32_t> prio(static_cast<std::size_t>(n));
    std::vector<Player> owner(static_cast<std::size_t>(n));
    std::vector<std::vector<vertex_t>> succ(static_cast<std::size_t>(n));

    // partial Fisher-Yates over a shared permutation, undone after each vertex
    std::vector<vertex_t> perm(static_cast<std::size_t>(n));
    for (vertex_t i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::vector<std::pair<std::int32_t, std::int32_t>> swaps;

    for (vertex_t v = 0; v < n; ++v) {
        prio[static_cast<std::size_t>(v)] =
            static_cast<std::int32_t>(draw_below(rng, static_cast<std::uint64_t>(max_priority) + 1));
        owner[static_cast<std::size_t>(v)] = draw_below(rng, 2) == 0 ? Player::even : Player::odd;
        const std::int32_t k =
            spec.min_outdeg +
            static_cast<std::int32_t>(draw_below(
                rng, static_cast<std::uint64_t>(spec.max_outdeg - spec.min_outdeg) + 1));
        auto& row = succ[static_cast<std::size_t>(v)];
        row.reserve(static_cast<std::size_t>(k));
        swaps.clear();
        for (std::int32_t i = 0; i < k; ++i) {
            vertex_t pick;
            for (;;) {
                const std::int32_t j =
                    i + static_cast<std::int32_t>(draw_below(rng, static_cast<std::uint64_t>(n - i)));
                pick = perm[static_cast<std::size_t>(j)];
                if (spec.self_loops || pick != v) {
                    swaps.emplace_back(i, j);
                    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
                    break;
                }
                // v itself was drawn while self-loops are off; redraw
            }
            row.push_back(pick);
        }
        for (auto it = swaps.rbegin(); it != swaps.rend(); ++it)
            std::swap(perm[static_cast<std::size_t>(it->first)],
                      perm[static_cast<std::size_t>(it->second)]);
    }
    return ParityGame::from_parts(std::move(prio), std::move(owner), std::move(succ));
}

} // namespace pg
