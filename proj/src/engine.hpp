#pragma once

// Internal machinery shared by the attractor facades, tangle extraction and
// the solver loops. Not installed; everything here assumes single-threaded
// use over one game.

#include <cstdint>
#include <span>
#include <vector>

#include "pg/game.hpp"
#include "pg/strategy.hpp"
#include "pg/tangle.hpp"
#include "pg/types.hpp"

namespace pg::detail {

// region[] values: a recorded region priority (>= 0), or one of these.
constexpr std::int32_t kFree = -1;    // in the current subgame, not yet attracted
constexpr std::int32_t kRemoved = -2; // solved or outside the active mask

struct Arena {
    explicit Arena(const ParityGame& g)
        : game(&g),
          region(static_cast<std::size_t>(g.vertex_count()), kRemoved),
          strategy(static_cast<std::size_t>(g.vertex_count()), Strategy::none),
          out_count(static_cast<std::size_t>(g.vertex_count()), 0),
          out_stamp(static_cast<std::size_t>(g.vertex_count()), 0),
          mark_stamp(static_cast<std::size_t>(g.vertex_count()), 0),
          scc_num(static_cast<std::size_t>(g.vertex_count()), 0),
          scc_low(static_cast<std::size_t>(g.vertex_count()), 0),
          scc_tag(static_cast<std::size_t>(g.vertex_count()), 0),
          scc_stamp(static_cast<std::size_t>(g.vertex_count()), 0) {}

    const ParityGame* game;
    std::vector<std::int32_t> region;
    std::vector<vertex_t> strategy;

    // lazily initialized per-vertex count of remaining successors in
    // {kFree, current p}; valid while out_stamp matches epoch
    std::vector<std::int32_t> out_count;
    std::vector<std::uint32_t> out_stamp;

    // per-tangle count of escapes not yet attracted
    std::vector<std::int32_t> tangle_count;
    std::vector<std::uint32_t> tangle_stamp;

    std::uint32_t epoch = 0;

    std::vector<vertex_t> queue;

    // reduction marks (removed-from-region)
    std::vector<std::uint32_t> mark_stamp;
    std::uint32_t mark_epoch = 0;

    // Tarjan scratch
    std::vector<std::int32_t> scc_num;
    std::vector<std::int32_t> scc_low;
    std::vector<std::int32_t> scc_tag;
    std::vector<std::uint32_t> scc_stamp;
    std::uint32_t scc_epoch = 0;

    void begin_epoch(std::size_t tangle_capacity) {
        if (tangle_count.size() < tangle_capacity) {
            tangle_count.resize(tangle_capacity, 0);
            tangle_stamp.resize(tangle_capacity, 0);
        }
        if (++epoch == 0) {
            std::fill(out_stamp.begin(), out_stamp.end(), 0);
            std::fill(tangle_stamp.begin(), tangle_stamp.end(), 0);
            epoch = 1;
        }
    }

    void begin_mark_epoch() {
        if (++mark_epoch == 0) {
            std::fill(mark_stamp.begin(), mark_stamp.end(), 0);
            mark_epoch = 1;
        }
    }

    bool marked(vertex_t v) const { return mark_stamp[static_cast<std::size_t>(v)] == mark_epoch; }
    void mark(vertex_t v) { mark_stamp[static_cast<std::size_t>(v)] = mark_epoch; }

    void begin_scc_epoch() {
        if (++scc_epoch == 0) {
            std::fill(scc_stamp.begin(), scc_stamp.end(), 0);
            scc_epoch = 1;
        }
    }
};

struct AttractOutcome {
    std::uint64_t steps = 0;
    std::vector<int> fired_tangles; // store ids, firing order
};

// Backward attractor for `alpha` toward `seeds` within {v : region[v] ==
// kFree}, with Z identified by region[v] == p. Seeds must be kFree; every
// member of Z (seeds first) is appended to `out` in attraction order.
// Strategies are written for attracted alpha-vertices and for alpha-vertices
// already in Z when a successor lands in Z (first event wins). When `store`
// is non-null, a tangle of `alpha` fires as soon as its whole (nonempty)
// escape list is inside Z, provided all its vertices are free or in Z;
// its witness then fills strategy gaps only.
AttractOutcome attract_region(Arena& a, const TangleStore* store, Player alpha, std::int32_t p,
                              std::span<const vertex_t> seeds, std::vector<vertex_t>& out);

// Greatest-fixpoint reduction of the region {v : region[v] == p}: a backward
// removal seeded by the priority-p `heads` that escape to lower regions
// (alpha heads without a strategy; opponent heads with a successor outside
// the region that is neither removed nor in a higher region). Removed
// vertices are marked in the current mark epoch (caller begins it). Returns
// the surviving vertex count.
std::size_t reduce_region_marks(Arena& a, Player alpha, std::int32_t p,
                                std::span<const vertex_t> heads);

// Scans heads only; true iff some priority-p head escapes to lower regions.
bool any_head_escapes(const Arena& a, Player alpha, std::int32_t p,
                      std::span<const vertex_t> heads);

// Harvests tangles from the reduced region (region[v] == p and unmarked).
// Non-highest: nontrivial bottom SCCs of the strategy-restricted graph,
// found by Tarjan runs from the heads. Highest: the whole reduced region as
// one dominion-tangle, no SCC decomposition. Escapes are collected against
// {v : region[v] != kRemoved} minus the tangle. Returned tangles carry
// id -1, sorted vertex/witness/escape lists.
std::vector<Tangle> collect_tangles(Arena& a, Player alpha, std::int32_t p,
                                    std::span<const vertex_t> region_verts,
                                    std::span<const vertex_t> heads, bool highest_of_player);

} // namespace pg::detail
