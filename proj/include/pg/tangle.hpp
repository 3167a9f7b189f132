#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pg/game.hpp"
#include "pg/strategy.hpp"
#include "pg/types.hpp"
#include "pg/vertex_set.hpp"

namespace pg {

/// A p-tangle: vertex set U with pr(U) = p, won by player p mod 2 via the
/// witness strategy. With E' = witness edges plus all opponent edges inside U,
/// (U, E') is strongly connected and every E'-cycle has its top priority of
/// the winner's parity. `escapes` are the opponent's edges out of U.
struct Tangle {
    int id = -1;
    std::int32_t priority = 0;
    Player player = Player::even;
    std::vector<vertex_t> vertices;       // sorted ascending
    std::vector<StrategyEdge> witness;    // sorted by source; alpha-vertices into U
    std::vector<vertex_t> escapes;        // sorted ascending

    bool is_dominion() const { return escapes.empty(); }
    bool contains(vertex_t v) const;
};

/// Append-only collection of learned tangles with a vertex-set dedup index,
/// a per-vertex containment index, and a per-vertex escape index (which
/// tangles list v as an escape; this drives the tangle attractor).
class TangleStore {
public:
    explicit TangleStore(vertex_t universe);

    enum class AddResult { added, duplicate };

    /// Assigns the next id on success; on duplicate the store is unchanged.
    AddResult add(Tangle t, int* id_out = nullptr);

    /// Drops every tangle intersecting `removed`; retained tangles lose
    /// escape entries into `removed` (and are kept even if that empties the
    /// escape list).
    void prune(const VertexSet& removed);

    std::size_t size() const { return tangles_.size(); }
    const Tangle& operator[](std::size_t pos) const { return tangles_[pos]; }
    const std::vector<Tangle>& tangles() const { return tangles_; }

    /// Positions of tangles containing v.
    std::span<const std::int32_t> containing(vertex_t v) const {
        return vertex_index_[static_cast<std::size_t>(v)];
    }

    /// Positions of tangles whose escape list contains v.
    std::span<const std::int32_t> escapes_through(vertex_t v) const {
        return escape_index_[static_cast<std::size_t>(v)];
    }

    const Tangle* find(std::span<const vertex_t> sorted_vertices) const;

    int next_id() const { return next_id_; }
    int allocate_id() { return next_id_++; }

private:
    void index_tangle(std::int32_t pos);

    std::vector<Tangle> tangles_;
    std::vector<std::vector<std::int32_t>> vertex_index_;
    std::vector<std::vector<std::int32_t>> escape_index_;
    std::unordered_map<std::uint64_t, std::vector<std::int32_t>> by_fingerprint_;
    int next_id_ = 0;
};

/// Partial map vertex -> region priority of the top-down decomposition;
/// `unassigned` marks vertices outside every recorded region.
class RegionMap {
public:
    static constexpr std::int32_t unassigned = -1;

    RegionMap() = default;
    explicit RegionMap(vertex_t n) : prio_(static_cast<std::size_t>(n), unassigned) {}

    bool assigned(vertex_t v) const { return prio_[static_cast<std::size_t>(v)] != unassigned; }
    std::int32_t priority_of(vertex_t v) const { return prio_[static_cast<std::size_t>(v)]; }
    void assign(vertex_t v, std::int32_t p) { prio_[static_cast<std::size_t>(v)] = p; }
    void unassign(vertex_t v) { prio_[static_cast<std::size_t>(v)] = unassigned; }
    vertex_t size() const { return static_cast<vertex_t>(prio_.size()); }

private:
    std::vector<std::int32_t> prio_;
};

/// Checks the Tangle invariants against `g` restricted to `active` (escape
/// recomputation and opponent edges only consider active vertices). Witness
/// entries whose source is not an alpha-owned member are ignored, matching
/// the restriction semantics of Strategy. The all-cycles-won check runs by
/// iterated SCC decomposition.
std::vector<Violation> check_tangle(const ParityGame& g, const Tangle& t, const VertexSet& active);
std::vector<Violation> check_tangle(const ParityGame& g, const Tangle& t);

/// Dominion variant: closure (recomputed escapes empty), witness totality,
/// every vertex keeps a move, and all internal cycles won — but no strong
/// connectivity, since a highest-region dominion may union several tangles.
std::vector<Violation> check_dominion(const ParityGame& g, const Tangle& t,
                                      const VertexSet& active);
std::vector<Violation> check_dominion(const ParityGame& g, const Tangle& t);

/// Greatest fixpoint that strips from `region` every vertex from which the
/// opponent can reach lower regions while the winner follows `strategy`:
/// a backward removal seeded by the priority-p vertices that escape
/// downward. `sub` is the subgame the region was computed in (the region's
/// own vertices included, higher regions excluded).
VertexSet reduce_region(const SubgameMask& sub, const VertexSet& region, const Strategy& strategy,
                        Player player, std::int32_t p);

/// Reduces the region and returns each nontrivial bottom SCC of the result
/// (winner constrained to `strategy`) as a p-tangle, with escapes computed
/// against `sub.active` plus the vertices assigned in `region_map` (the
/// enclosing search game). When `highest_region_of_player` is set the whole
/// reduced region is returned as one dominion-tangle and SCC decomposition is
/// skipped. With `skip_reduction`, regions whose priority-p vertices escape
/// downward yield nothing and the fixpoint is skipped otherwise (it would be
/// the identity). Returned tangles carry id -1.
std::vector<Tangle> extract_tangles(const SubgameMask& sub, const VertexSet& region,
                                    const Strategy& strategy, Player player, std::int32_t p,
                                    const RegionMap& region_map, bool highest_region_of_player,
                                    bool skip_reduction = false);

} // namespace pg
