#pragma once

#include <utility>
#include <vector>

#include "pg/types.hpp"

namespace pg {

/// Partial map vertex -> chosen successor. Entries are a subset of the edge
/// relation; when used as one player's strategy the domain is restricted to
/// that player's vertices.
class Strategy {
public:
    static constexpr vertex_t none = -1;

    Strategy() = default;
    explicit Strategy(vertex_t n) : choice_(static_cast<std::size_t>(n), none) {}

    vertex_t size() const { return static_cast<vertex_t>(choice_.size()); }

    bool defined(vertex_t v) const { return choice_[static_cast<std::size_t>(v)] != none; }

    vertex_t operator[](vertex_t v) const { return choice_[static_cast<std::size_t>(v)]; }

    void set(vertex_t v, vertex_t to) { choice_[static_cast<std::size_t>(v)] = to; }
    void unset(vertex_t v) { choice_[static_cast<std::size_t>(v)] = none; }

    std::size_t domain_size() const {
        std::size_t k = 0;
        for (vertex_t c : choice_)
            if (c != none) ++k;
        return k;
    }

    /// Defined entries sorted by source vertex.
    std::vector<std::pair<vertex_t, vertex_t>> entries() const {
        std::vector<std::pair<vertex_t, vertex_t>> out;
        for (vertex_t v = 0; v < size(); ++v)
            if (defined(v)) out.emplace_back(v, (*this)[v]);
        return out;
    }

    bool operator==(const Strategy&) const = default;

private:
    std::vector<vertex_t> choice_;
};

using StrategyEdge = std::pair<vertex_t, vertex_t>;

} // namespace pg
