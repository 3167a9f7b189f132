#include "engine.hpp"

#include <algorithm>
#include <cassert>

namespace pg::detail {

AttractOutcome attract_region(Arena& a, const TangleStore* store, Player alpha, std::int32_t p,
                              std::span<const vertex_t> seeds, std::vector<vertex_t>& out) {
    const ParityGame& g = *a.game;
    AttractOutcome res;
    a.begin_epoch(store ? store->size() : 0);

    const std::size_t first = out.size();
    for (vertex_t s : seeds) {
        assert(a.region[static_cast<std::size_t>(s)] == kFree);
        a.region[static_cast<std::size_t>(s)] = p;
        a.strategy[static_cast<std::size_t>(s)] = Strategy::none;
        out.push_back(s);
    }

    auto add = [&](vertex_t v, vertex_t strat) {
        a.region[static_cast<std::size_t>(v)] = p;
        a.strategy[static_cast<std::size_t>(v)] = strat;
        out.push_back(v);
    };

    for (std::size_t idx = first; idx < out.size(); ++idx) {
        const vertex_t w = out[idx];
        ++res.steps;

        for (vertex_t u : g.predecessors(w)) {
            const std::int32_t r = a.region[static_cast<std::size_t>(u)];
            if (r == p) {
                // already in Z; record a strategy for seed alpha-vertices that
                // had none yet (first attraction event wins)
                if (g.owner(u) == alpha && a.strategy[static_cast<std::size_t>(u)] == Strategy::none)
                    a.strategy[static_cast<std::size_t>(u)] = w;
            } else if (r == kFree) {
                if (g.owner(u) == alpha) {
                    add(u, w);
                } else {
                    if (a.out_stamp[static_cast<std::size_t>(u)] != a.epoch) {
                        a.out_stamp[static_cast<std::size_t>(u)] = a.epoch;
                        std::int32_t c = 0;
                        for (vertex_t s : g.successors(u)) {
                            const std::int32_t rs = a.region[static_cast<std::size_t>(s)];
                            if (rs == kFree || rs == p) ++c;
                        }
                        a.out_count[static_cast<std::size_t>(u)] = c;
                    }
                    if (--a.out_count[static_cast<std::size_t>(u)] == 0) add(u, Strategy::none);
                }
            }
        }

        if (store == nullptr) continue;
        for (std::int32_t pos : store->escapes_through(w)) {
            const Tangle& t = (*store)[static_cast<std::size_t>(pos)];
            if (t.player != alpha) continue;
            if (a.tangle_stamp[static_cast<std::size_t>(pos)] != a.epoch) {
                a.tangle_stamp[static_cast<std::size_t>(pos)] = a.epoch;
                // escapes already sitting in other regions are resolved there;
                // only escapes still inside this subgame hold the tangle back
                std::int32_t c = 0;
                for (vertex_t e : t.escapes) {
                    const std::int32_t re = a.region[static_cast<std::size_t>(e)];
                    if (re == kFree || re == p) ++c;
                }
                a.tangle_count[static_cast<std::size_t>(pos)] = c;
            }
            if (--a.tangle_count[static_cast<std::size_t>(pos)] != 0) continue;
            // all escapes attracted; the tangle fires if it lies in the subgame
            bool eligible = true;
            for (vertex_t v : t.vertices) {
                const std::int32_t rv = a.region[static_cast<std::size_t>(v)];
                if (rv != kFree && rv != p) {
                    eligible = false;
                    break;
                }
            }
            if (!eligible) continue;
            ++res.steps;
            res.fired_tangles.push_back(t.id);
            for (vertex_t v : t.vertices)
                if (a.region[static_cast<std::size_t>(v)] == kFree) add(v, Strategy::none);
            // witness only fills gaps; tangles may overlap
            for (const auto& [u, s] : t.witness)
                if (a.strategy[static_cast<std::size_t>(u)] == Strategy::none)
                    a.strategy[static_cast<std::size_t>(u)] = s;
        }
    }
    return res;
}

namespace {

// escapes-downward test for a single priority-p head
bool head_escapes(const Arena& a, Player alpha, std::int32_t p, vertex_t h) {
    const ParityGame& g = *a.game;
    if (g.owner(h) == alpha)
        return a.strategy[static_cast<std::size_t>(h)] == Strategy::none;
    for (vertex_t s : g.successors(h)) {
        const std::int32_t rs = a.region[static_cast<std::size_t>(s)];
        if (rs != kRemoved && rs < p) return true;
    }
    return false;
}

} // namespace

bool any_head_escapes(const Arena& a, Player alpha, std::int32_t p,
                      std::span<const vertex_t> heads) {
    for (vertex_t h : heads)
        if (head_escapes(a, alpha, p, h)) return true;
    return false;
}

std::size_t reduce_region_marks(Arena& a, Player alpha, std::int32_t p,
                                std::span<const vertex_t> heads) {
    const ParityGame& g = *a.game;
    std::vector<vertex_t>& queue = a.queue;
    queue.clear();
    std::size_t removed = 0;
    for (vertex_t h : heads) {
        if (head_escapes(a, alpha, p, h)) {
            a.mark(h);
            queue.push_back(h);
            ++removed;
        }
    }
    for (std::size_t idx = 0; idx < queue.size(); ++idx) {
        const vertex_t v = queue[idx];
        for (vertex_t u : g.predecessors(v)) {
            if (a.region[static_cast<std::size_t>(u)] != p || a.marked(u)) continue;
            if (g.owner(u) == alpha && a.strategy[static_cast<std::size_t>(u)] != v) continue;
            a.mark(u);
            queue.push_back(u);
            ++removed;
        }
    }
    // heads.size() is only the seed count; the caller knows the region size
    return removed;
}

namespace {

struct TarjanFrame {
    vertex_t v;
    std::uint32_t next; // index into the successor list (alpha: 0 = strategy)
};

bool in_reduced(const Arena& a, std::int32_t p, vertex_t v) {
    return a.region[static_cast<std::size_t>(v)] == p && !a.marked(v);
}

Tangle build_tangle(const Arena& a, Player alpha, std::int32_t p, std::vector<vertex_t> members,
                    auto&& outside_tangle) {
    const ParityGame& g = *a.game;
    Tangle t;
    t.priority = p;
    t.player = alpha;
    std::sort(members.begin(), members.end());
    for (vertex_t v : members) {
        if (g.owner(v) == alpha) {
            t.witness.emplace_back(v, a.strategy[static_cast<std::size_t>(v)]);
        } else {
            for (vertex_t s : g.successors(v)) {
                if (a.region[static_cast<std::size_t>(s)] == kRemoved) continue;
                if (outside_tangle(s)) t.escapes.push_back(s);
            }
        }
    }
    t.vertices = std::move(members);
    std::sort(t.escapes.begin(), t.escapes.end());
    t.escapes.erase(std::unique(t.escapes.begin(), t.escapes.end()), t.escapes.end());
    return t;
}

} // namespace

std::vector<Tangle> collect_tangles(Arena& a, Player alpha, std::int32_t p,
                                    std::span<const vertex_t> region_verts,
                                    std::span<const vertex_t> heads, bool highest_of_player) {
    const ParityGame& g = *a.game;
    std::vector<Tangle> out;

    if (highest_of_player) {
        // the whole reduced region is one dominion-tangle
        std::vector<vertex_t> members;
        for (vertex_t v : region_verts)
            if (!a.marked(v)) members.push_back(v);
        if (members.empty()) return out;
        out.push_back(build_tangle(a, alpha, p, std::move(members),
                                   [&](vertex_t s) { return !in_reduced(a, p, s); }));
        return out;
    }

    a.begin_scc_epoch();
    std::int32_t counter = 0;
    std::int32_t next_tag = 0;
    std::vector<TarjanFrame> frames;
    std::vector<vertex_t> comp_stack;
    std::vector<vertex_t> members;

    auto visited = [&](vertex_t v) { return a.scc_stamp[static_cast<std::size_t>(v)] == a.scc_epoch; };
    auto visit = [&](vertex_t v) {
        a.scc_stamp[static_cast<std::size_t>(v)] = a.scc_epoch;
        a.scc_num[static_cast<std::size_t>(v)] = ++counter;
        a.scc_low[static_cast<std::size_t>(v)] = counter;
        a.scc_tag[static_cast<std::size_t>(v)] = -1;
        comp_stack.push_back(v);
        frames.push_back({v, 0});
    };

    // every bottom SCC contains a priority-p vertex, so searching from the
    // heads reaches all of them
    for (vertex_t root : heads) {
        if (!in_reduced(a, p, root) || visited(root)) continue;
        visit(root);
        while (!frames.empty()) {
            TarjanFrame& f = frames.back();
            const vertex_t v = f.v;
            vertex_t next = Strategy::none;
            if (g.owner(v) == alpha) {
                if (f.next == 0) {
                    next = a.strategy[static_cast<std::size_t>(v)];
                    f.next = 1;
                }
            } else {
                auto succ = g.successors(v);
                while (f.next < succ.size()) {
                    const vertex_t s = succ[f.next];
                    ++f.next;
                    if (in_reduced(a, p, s)) {
                        next = s;
                        break;
                    }
                }
            }
            if (next != Strategy::none) {
                if (!visited(next)) {
                    visit(next);
                } else if (a.scc_tag[static_cast<std::size_t>(next)] == -1) {
                    a.scc_low[static_cast<std::size_t>(v)] =
                        std::min(a.scc_low[static_cast<std::size_t>(v)],
                                 a.scc_num[static_cast<std::size_t>(next)]);
                }
                continue;
            }
            // v's successors are exhausted
            frames.pop_back();
            if (!frames.empty()) {
                const vertex_t parent = frames.back().v;
                a.scc_low[static_cast<std::size_t>(parent)] =
                    std::min(a.scc_low[static_cast<std::size_t>(parent)],
                             a.scc_low[static_cast<std::size_t>(v)]);
            }
            if (a.scc_low[static_cast<std::size_t>(v)] != a.scc_num[static_cast<std::size_t>(v)])
                continue;
            // v is an SCC root
            const std::int32_t tag = next_tag++;
            members.clear();
            for (;;) {
                const vertex_t m = comp_stack.back();
                comp_stack.pop_back();
                a.scc_tag[static_cast<std::size_t>(m)] = tag;
                members.push_back(m);
                if (m == v) break;
            }

            auto in_scc = [&](vertex_t s) {
                return a.scc_stamp[static_cast<std::size_t>(s)] == a.scc_epoch &&
                       a.scc_tag[static_cast<std::size_t>(s)] == tag;
            };

            const bool nontrivial =
                members.size() > 1 ||
                (g.owner(v) == alpha ? a.strategy[static_cast<std::size_t>(v)] == v
                                     : g.has_edge(v, v));
            if (!nontrivial) continue;

            // only bottom SCCs (no strategy-restricted edge leaves the SCC)
            // are tangles; anything else escapes to lower SCCs of the region
            bool bottom = true;
            for (vertex_t m : members) {
                if (g.owner(m) == alpha) {
                    if (!in_scc(a.strategy[static_cast<std::size_t>(m)])) bottom = false;
                } else {
                    for (vertex_t s : g.successors(m))
                        if (in_reduced(a, p, s) && !in_scc(s)) {
                            bottom = false;
                            break;
                        }
                }
                if (!bottom) break;
            }
            if (!bottom) continue;

            out.push_back(build_tangle(a, alpha, p, members,
                                       [&](vertex_t s) { return !in_scc(s); }));
        }
    }
    return out;
}

} // namespace pg::detail
