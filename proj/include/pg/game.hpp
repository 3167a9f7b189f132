#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pg/types.hpp"
#include "pg/vertex_set.hpp"

namespace pg {

/// Arena of a parity game: per-vertex priority, owner and ordered successor
/// lists, plus predecessor lists (the transpose, built eagerly because the
/// attractors are backward searches). Immutable after construction and safe
/// to share across threads.
class ParityGame {
public:
    ParityGame() = default;

    /// Unchecked construction from raw parts. `predecessors`, when given, is
    /// stored as-is (validate() can then detect a broken transpose); otherwise
    /// it is derived from `successors`.
    static ParityGame from_parts(std::vector<std::int32_t> priorities, std::vector<Player> owners,
                                 std::vector<std::vector<vertex_t>> successors,
                                 std::vector<std::optional<std::string>> labels = {},
                                 std::optional<std::vector<std::vector<vertex_t>>> predecessors =
                                     std::nullopt);

    vertex_t vertex_count() const { return static_cast<vertex_t>(priority_.size()); }
    std::size_t edge_count() const { return succ_data_.size(); }

    std::int32_t priority(vertex_t v) const { return priority_[static_cast<std::size_t>(v)]; }
    Player owner(vertex_t v) const { return owner_[static_cast<std::size_t>(v)]; }

    std::span<const vertex_t> successors(vertex_t v) const {
        return {succ_data_.data() + succ_off_[static_cast<std::size_t>(v)],
                succ_off_[static_cast<std::size_t>(v) + 1] - succ_off_[static_cast<std::size_t>(v)]};
    }

    std::span<const vertex_t> predecessors(vertex_t v) const {
        return {pred_data_.data() + pred_off_[static_cast<std::size_t>(v)],
                pred_off_[static_cast<std::size_t>(v) + 1] - pred_off_[static_cast<std::size_t>(v)]};
    }

    const std::optional<std::string>& label(vertex_t v) const {
        return labels_[static_cast<std::size_t>(v)];
    }

    bool has_edge(vertex_t u, vertex_t v) const {
        for (vertex_t s : successors(u))
            if (s == v) return true;
        return false;
    }

    /// Highest priority in the game; -1 for the empty game.
    std::int32_t max_priority() const { return max_priority_; }

    /// All vertices ordered by (priority descending, index ascending).
    std::span<const vertex_t> by_priority_desc() const { return by_priority_desc_; }

    bool operator==(const ParityGame& o) const {
        return priority_ == o.priority_ && owner_ == o.owner_ && succ_off_ == o.succ_off_ &&
               succ_data_ == o.succ_data_ && labels_ == o.labels_;
    }

private:
    std::vector<std::int32_t> priority_;
    std::vector<Player> owner_;
    std::vector<std::size_t> succ_off_;
    std::vector<vertex_t> succ_data_;
    std::vector<std::size_t> pred_off_;
    std::vector<vertex_t> pred_data_;
    std::vector<std::optional<std::string>> labels_;
    std::vector<vertex_t> by_priority_desc_;
    std::int32_t max_priority_ = -1;
};

/// A named invariant violation; violations are data, not failures.
struct Violation {
    vertex_t vertex;
    std::string rule;
    std::string detail;
};

/// Checks all ParityGame invariants: left-totality, successor indices in
/// range, no duplicate successors, predecessors = transpose of successors.
std::vector<Violation> validate(const ParityGame& g);

/// View of a subgame: operations only traverse edges with both endpoints
/// active.
struct SubgameMask {
    const ParityGame* game = nullptr;
    VertexSet active;

    SubgameMask() = default;
    explicit SubgameMask(const ParityGame& g) : game(&g), active(g.vertex_count()) {
        active.fill();
    }
    SubgameMask(const ParityGame& g, VertexSet a) : game(&g), active(std::move(a)) {}
};

/// Materializes the subgame induced by `keep` (edges with both endpoints
/// kept). Returns the new game and the old->new index map (-1 = dropped).
/// The result need not be left-total; run validate() when that matters.
std::pair<ParityGame, std::vector<vertex_t>> extract_subgame(const ParityGame& g,
                                                             const VertexSet& keep);

} // namespace pg
