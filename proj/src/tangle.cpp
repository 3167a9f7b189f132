#include "pg/tangle.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "engine.hpp"

namespace pg {

bool Tangle::contains(vertex_t v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

namespace {

std::uint64_t fingerprint(const std::vector<vertex_t>& vs) {
    std::uint64_t h = 1469598103934665603ull;
    for (vertex_t v : vs) {
        h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

TangleStore::TangleStore(vertex_t universe)
    : vertex_index_(static_cast<std::size_t>(universe)),
      escape_index_(static_cast<std::size_t>(universe)) {}

TangleStore::AddResult TangleStore::add(Tangle t, int* id_out) {
    const std::uint64_t h = fingerprint(t.vertices);
    auto& bucket = by_fingerprint_[h];
    for (std::int32_t pos : bucket)
        if (tangles_[static_cast<std::size_t>(pos)].vertices == t.vertices) {
            if (id_out) *id_out = tangles_[static_cast<std::size_t>(pos)].id;
            return AddResult::duplicate;
        }
    t.id = next_id_++;
    if (id_out) *id_out = t.id;
    const std::int32_t pos = static_cast<std::int32_t>(tangles_.size());
    bucket.push_back(pos);
    tangles_.push_back(std::move(t));
    index_tangle(pos);
    return AddResult::added;
}

void TangleStore::index_tangle(std::int32_t pos) {
    const Tangle& t = tangles_[static_cast<std::size_t>(pos)];
    for (vertex_t v : t.vertices) vertex_index_[static_cast<std::size_t>(v)].push_back(pos);
    for (vertex_t e : t.escapes) escape_index_[static_cast<std::size_t>(e)].push_back(pos);
}

void TangleStore::prune(const VertexSet& removed) {
    std::vector<Tangle> keep;
    keep.reserve(tangles_.size());
    for (Tangle& t : tangles_) {
        bool hit = false;
        for (vertex_t v : t.vertices)
            if (removed.contains(v)) {
                hit = true;
                break;
            }
        if (hit) continue;
        // drop escape entries into the removed part; a tangle whose escapes
        // run dry is kept (it is a dominion of the remaining subgame now and
        // the next search returns it; the attractor never fires on it)
        std::erase_if(t.escapes, [&](vertex_t e) { return removed.contains(e); });
        keep.push_back(std::move(t));
    }
    tangles_ = std::move(keep);
    for (auto& idx : vertex_index_) idx.clear();
    for (auto& idx : escape_index_) idx.clear();
    by_fingerprint_.clear();
    for (std::size_t pos = 0; pos < tangles_.size(); ++pos) {
        by_fingerprint_[fingerprint(tangles_[pos].vertices)].push_back(
            static_cast<std::int32_t>(pos));
        index_tangle(static_cast<std::int32_t>(pos));
    }
}

const Tangle* TangleStore::find(std::span<const vertex_t> sorted_vertices) const {
    std::vector<vertex_t> key(sorted_vertices.begin(), sorted_vertices.end());
    auto it = by_fingerprint_.find(fingerprint(key));
    if (it == by_fingerprint_.end()) return nullptr;
    for (std::int32_t pos : it->second)
        if (tangles_[static_cast<std::size_t>(pos)].vertices == key)
            return &tangles_[static_cast<std::size_t>(pos)];
    return nullptr;
}

namespace {

// Iterative Tarjan over a compact index space; succ_of(i, k) yields the k-th
// successor index or -1 when exhausted. Returns component ids in comp (sinks
// get higher... ids are emission order), component count as return value.
int tarjan_components(std::size_t n, const std::function<std::int32_t(std::int32_t, std::uint32_t)>& succ_of,
                      std::vector<std::int32_t>& comp) {
    comp.assign(n, -1);
    std::vector<std::int32_t> num(n, 0), low(n, 0);
    std::vector<std::pair<std::int32_t, std::uint32_t>> frames;
    std::vector<std::int32_t> stack;
    std::int32_t counter = 0;
    int components = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (num[root] != 0) continue;
        frames.emplace_back(static_cast<std::int32_t>(root), 0);
        num[root] = low[root] = ++counter;
        stack.push_back(static_cast<std::int32_t>(root));
        while (!frames.empty()) {
            auto& [v, k] = frames.back();
            const std::int32_t w = succ_of(v, k);
            if (w >= 0) {
                ++k;
                if (num[static_cast<std::size_t>(w)] == 0) {
                    frames.emplace_back(w, 0);
                    num[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = ++counter;
                    stack.push_back(w);
                } else if (comp[static_cast<std::size_t>(w)] == -1) {
                    low[static_cast<std::size_t>(v)] =
                        std::min(low[static_cast<std::size_t>(v)], num[static_cast<std::size_t>(w)]);
                }
                continue;
            }
            const std::int32_t done = v;
            frames.pop_back();
            if (!frames.empty())
                low[static_cast<std::size_t>(frames.back().first)] =
                    std::min(low[static_cast<std::size_t>(frames.back().first)],
                             low[static_cast<std::size_t>(done)]);
            if (low[static_cast<std::size_t>(done)] == num[static_cast<std::size_t>(done)]) {
                for (;;) {
                    const std::int32_t m = stack.back();
                    stack.pop_back();
                    comp[static_cast<std::size_t>(m)] = components;
                    if (m == done) break;
                }
                ++components;
            }
        }
    }
    return components;
}

struct TangleView {
    const ParityGame* game;
    const Tangle* t;
    std::unordered_map<vertex_t, std::int32_t> index; // vertex -> compact id
    std::vector<vertex_t> witness_of;                 // compact id -> choice (none for opponent)

    bool member(vertex_t v) const { return index.count(v) != 0; }
};

// E'-successors in compact space; `alive` filters removed vertices for the
// iterated cycle check (nullptr = all alive).
std::int32_t eprime_succ(const TangleView& view, const std::vector<char>* alive, std::int32_t i,
                         std::uint32_t k) {
    const vertex_t v = view.t->vertices[static_cast<std::size_t>(i)];
    if (view.game->owner(v) == view.t->player) {
        if (k > 0) return -1;
        const vertex_t w = view.witness_of[static_cast<std::size_t>(i)];
        if (w == Strategy::none) return -1;
        auto it = view.index.find(w);
        if (it == view.index.end()) return -1;
        if (alive && !(*alive)[static_cast<std::size_t>(it->second)]) return -1;
        return it->second;
    }
    auto succ = view.game->successors(v);
    for (std::uint32_t j = k; j < succ.size(); ++j) {
        auto it = view.index.find(succ[j]);
        if (it == view.index.end()) continue;
        if (alive && !(*alive)[static_cast<std::size_t>(it->second)]) continue;
        return it->second;
    }
    return -1;
}

// wraps eprime_succ so the caller can keep a cursor over filtered successors:
// we encode the scan position in k and re-scan from it; Tarjan passes
// incrementing k which matches the unfiltered index for opponents, so skip
// counting must be handled by scanning forward from k each call.
std::function<std::int32_t(std::int32_t, std::uint32_t)> eprime_succ_fn(const TangleView& view,
                                                                        const std::vector<char>* alive) {
    return [&view, alive](std::int32_t i, std::uint32_t k) { return eprime_succ(view, alive, i, k); };
}

// All cycles of (U, E') must be won by the player: iterated SCC
// decomposition, removing the top-priority vertices of each winning SCC.
void check_cycles(const TangleView& view, std::vector<Violation>& out) {
    const std::size_t n = view.t->vertices.size();
    std::vector<char> alive(n, 1);
    std::vector<std::int32_t> comp;
    for (;;) {
        const int ncomp = tarjan_components(n, eprime_succ_fn(view, &alive), comp);
        std::vector<std::int32_t> top(static_cast<std::size_t>(ncomp), -1);
        std::vector<std::int32_t> count(static_cast<std::size_t>(ncomp), 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            const std::int32_t c = comp[i];
            ++count[static_cast<std::size_t>(c)];
            const std::int32_t pr = view.game->priority(view.t->vertices[i]);
            if (top[static_cast<std::size_t>(c)] < pr) top[static_cast<std::size_t>(c)] = pr;
        }
        bool removed_any = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            const std::int32_t c = comp[i];
            bool nontrivial = count[static_cast<std::size_t>(c)] > 1;
            if (!nontrivial) {
                // single vertex: cycle only with a self-edge in E'
                nontrivial = eprime_succ(view, &alive, static_cast<std::int32_t>(i), 0) ==
                                 static_cast<std::int32_t>(i) ||
                             [&] {
                                 for (std::uint32_t k = 0;; ++k) {
                                     const std::int32_t s =
                                         eprime_succ(view, &alive, static_cast<std::int32_t>(i), k);
                                     if (s < 0) return false;
                                     if (s == static_cast<std::int32_t>(i)) return true;
                                 }
                             }();
            }
            if (!nontrivial) continue;
            if (priority_winner(top[static_cast<std::size_t>(c)]) != view.t->player) {
                out.push_back({view.t->vertices[i], "losing-cycle",
                               "component with top priority " +
                                   std::to_string(top[static_cast<std::size_t>(c)]) +
                                   " is won by the opponent"});
                return;
            }
            if (view.game->priority(view.t->vertices[i]) == top[static_cast<std::size_t>(c)]) {
                alive[i] = 0;
                removed_any = true;
            }
        }
        if (!removed_any) return;
    }
}

TangleView make_view(const ParityGame& g, const Tangle& t) {
    TangleView view{&g, &t, {}, {}};
    view.index.reserve(t.vertices.size());
    for (std::size_t i = 0; i < t.vertices.size(); ++i)
        view.index.emplace(t.vertices[i], static_cast<std::int32_t>(i));
    view.witness_of.assign(t.vertices.size(), Strategy::none);
    for (const auto& [u, s] : t.witness) {
        auto it = view.index.find(u);
        if (it != view.index.end() && g.owner(u) == t.player)
            view.witness_of[static_cast<std::size_t>(it->second)] = s;
    }
    return view;
}

// shared basics for tangles and dominions; returns false when the tangle is
// too malformed for the structural checks to proceed
bool check_basics(const ParityGame& g, const Tangle& t, const VertexSet& active,
                  std::vector<Violation>& out) {
    if (t.vertices.empty()) {
        out.push_back({-1, "empty", "tangle has no vertices"});
        return false;
    }
    for (std::size_t i = 0; i < t.vertices.size(); ++i) {
        const vertex_t v = t.vertices[i];
        if (v < 0 || v >= g.vertex_count()) {
            out.push_back({v, "vertex-range", "vertex out of range"});
            return false;
        }
        if (i > 0 && t.vertices[i - 1] >= v) {
            out.push_back({v, "vertex-order", "vertex list not sorted strictly ascending"});
            return false;
        }
        if (!active.contains(v))
            out.push_back({v, "inactive-vertex", "tangle vertex outside the active subgame"});
    }
    std::int32_t top = -1;
    for (vertex_t v : t.vertices) top = std::max(top, g.priority(v));
    if (top != t.priority)
        out.push_back({-1, "priority",
                       "stored priority " + std::to_string(t.priority) + " but pr(U) = " +
                           std::to_string(top)});
    if (priority_winner(t.priority) != t.player)
        out.push_back({-1, "player", "player does not match the priority parity"});
    return true;
}

void check_witness(const ParityGame& g, const Tangle& t, const TangleView& view,
                   std::vector<Violation>& out) {
    // restriction semantics: entries whose source is not an alpha-owned
    // member are ignored
    for (std::size_t i = 0; i < t.vertices.size(); ++i) {
        const vertex_t v = t.vertices[i];
        if (g.owner(v) != t.player) continue;
        const vertex_t s = view.witness_of[i];
        if (s == Strategy::none) {
            out.push_back({v, "witness-missing", "no strategy for this vertex"});
            continue;
        }
        if (!view.member(s))
            out.push_back({v, "witness-target", "strategy leaves the tangle"});
        if (!g.has_edge(v, s))
            out.push_back({v, "witness-edge", "strategy pair is not an edge"});
    }
}

void check_escapes(const ParityGame& g, const Tangle& t, const TangleView& view,
                   const VertexSet& active, std::vector<Violation>& out) {
    std::vector<vertex_t> expect;
    for (vertex_t v : t.vertices) {
        if (g.owner(v) == t.player) continue;
        for (vertex_t s : g.successors(v))
            if (active.contains(s) && !view.member(s)) expect.push_back(s);
    }
    std::sort(expect.begin(), expect.end());
    expect.erase(std::unique(expect.begin(), expect.end()), expect.end());
    if (expect != t.escapes)
        out.push_back({-1, "escape-set", "stored escape list does not match recomputation"});
}

} // namespace

std::vector<Violation> check_tangle(const ParityGame& g, const Tangle& t,
                                    const VertexSet& active) {
    std::vector<Violation> out;
    if (!check_basics(g, t, active, out)) return out;
    const TangleView view = make_view(g, t);
    check_witness(g, t, view, out);
    if (!out.empty()) return out;

    // strong connectivity of (U, E'), with the convention that the graph must
    // carry at least one cycle
    std::vector<std::int32_t> comp;
    const int ncomp = tarjan_components(t.vertices.size(), eprime_succ_fn(view, nullptr), comp);
    if (ncomp != 1) {
        out.push_back({t.vertices.front(), "not-strongly-connected",
                       std::to_string(ncomp) + " strongly connected components"});
    } else if (t.vertices.size() == 1 &&
               eprime_succ(view, nullptr, 0, 0) != 0 &&
               [&] {
                   for (std::uint32_t k = 0;; ++k) {
                       const std::int32_t s = eprime_succ(view, nullptr, 0, k);
                       if (s < 0) return true;
                       if (s == 0) return false;
                   }
               }()) {
        out.push_back({t.vertices.front(), "no-internal-cycle",
                       "single vertex without a self-edge in the witness graph"});
    }
    if (!out.empty()) return out;

    check_cycles(view, out);
    check_escapes(g, t, view, active, out);
    return out;
}

std::vector<Violation> check_tangle(const ParityGame& g, const Tangle& t) {
    VertexSet all(g.vertex_count());
    all.fill();
    return check_tangle(g, t, all);
}

std::vector<Violation> check_dominion(const ParityGame& g, const Tangle& t,
                                      const VertexSet& active) {
    std::vector<Violation> out;
    if (!check_basics(g, t, active, out)) return out;
    const TangleView view = make_view(g, t);
    check_witness(g, t, view, out);
    if (!out.empty()) return out;

    for (std::size_t i = 0; i < t.vertices.size(); ++i) {
        const vertex_t v = t.vertices[i];
        if (eprime_succ(view, nullptr, static_cast<std::int32_t>(i), 0) < 0)
            out.push_back({v, "stuck", "vertex has no move inside the dominion"});
    }
    check_escapes(g, t, view, active, out);
    if (!t.escapes.empty())
        out.push_back({-1, "not-closed", "dominion has escape edges"});
    if (!out.empty()) return out;
    check_cycles(view, out);
    return out;
}

std::vector<Violation> check_dominion(const ParityGame& g, const Tangle& t) {
    VertexSet all(g.vertex_count());
    all.fill();
    return check_dominion(g, t, all);
}

namespace {

// shared facade setup for reduce_region / extract_tangles
struct RegionState {
    detail::Arena arena;
    std::vector<vertex_t> verts;
    std::vector<vertex_t> heads;

    RegionState(const SubgameMask& sub, const VertexSet& region, const Strategy& strategy,
                std::int32_t p, const RegionMap* region_map)
        : arena(*sub.game) {
        const ParityGame& g = *sub.game;
        for (vertex_t v : sub.active) arena.region[static_cast<std::size_t>(v)] = detail::kFree;
        if (region_map) {
            for (vertex_t v = 0; v < region_map->size(); ++v)
                if (region_map->assigned(v))
                    arena.region[static_cast<std::size_t>(v)] = region_map->priority_of(v);
        }
        for (vertex_t v : region) {
            arena.region[static_cast<std::size_t>(v)] = p;
            arena.strategy[static_cast<std::size_t>(v)] =
                strategy.size() > v && strategy.defined(v) ? strategy[v] : Strategy::none;
            verts.push_back(v);
            if (g.priority(v) == p) heads.push_back(v);
        }
    }
};

} // namespace

VertexSet reduce_region(const SubgameMask& sub, const VertexSet& region, const Strategy& strategy,
                        Player player, std::int32_t p) {
    RegionState st(sub, region, strategy, p, nullptr);
    st.arena.begin_mark_epoch();
    detail::reduce_region_marks(st.arena, player, p, st.heads);
    VertexSet out(sub.game->vertex_count());
    for (vertex_t v : st.verts)
        if (!st.arena.marked(v)) out.insert(v);
    return out;
}

std::vector<Tangle> extract_tangles(const SubgameMask& sub, const VertexSet& region,
                                    const Strategy& strategy, Player player, std::int32_t p,
                                    const RegionMap& region_map, bool highest_region_of_player,
                                    bool skip_reduction) {
    RegionState st(sub, region, strategy, p, &region_map);
    st.arena.begin_mark_epoch();
    if (skip_reduction) {
        if (detail::any_head_escapes(st.arena, player, p, st.heads)) return {};
    } else {
        detail::reduce_region_marks(st.arena, player, p, st.heads);
    }
    return detail::collect_tangles(st.arena, player, p, st.verts, st.heads,
                                   highest_region_of_player);
}

} // namespace pg
