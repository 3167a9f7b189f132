#include "pg/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <string>

#include "pg/errors.hpp"

namespace pg {

namespace {

// ---------------------------------------------------------------------------
// small self-contained graph utilities over compact index spaces
// ---------------------------------------------------------------------------

using SuccFn = std::function<std::int32_t(std::int32_t, std::uint32_t)>; // -1 = exhausted

// Iterative Tarjan; fills comp (component id per vertex, emission order =
// reverse topological) and returns the component count. `alive` masks
// vertices out entirely.
int tarjan(std::size_t n, const SuccFn& succ_of, const std::vector<char>& alive,
           std::vector<std::int32_t>& comp) {
    comp.assign(n, -1);
    std::vector<std::int32_t> num(n, 0), low(n, 0);
    std::vector<std::pair<std::int32_t, std::uint32_t>> frames;
    std::vector<std::int32_t> stack;
    std::int32_t counter = 0;
    int components = 0;

    auto next_alive = [&](std::int32_t v, std::uint32_t& k) -> std::int32_t {
        for (;;) {
            const std::int32_t w = succ_of(v, k);
            if (w < 0) return -1;
            ++k;
            if (alive[static_cast<std::size_t>(w)]) return w;
        }
    };

    for (std::size_t root = 0; root < n; ++root) {
        if (!alive[root] || num[root] != 0) continue;
        frames.emplace_back(static_cast<std::int32_t>(root), 0);
        num[root] = low[root] = ++counter;
        stack.push_back(static_cast<std::int32_t>(root));
        while (!frames.empty()) {
            auto& [v, k] = frames.back();
            const std::int32_t w = next_alive(v, k);
            if (w >= 0) {
                if (num[static_cast<std::size_t>(w)] == 0) {
                    frames.emplace_back(w, 0);
                    num[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = ++counter;
                    stack.push_back(w);
                } else if (comp[static_cast<std::size_t>(w)] == -1) {
                    low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)],
                                                                num[static_cast<std::size_t>(w)]);
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

// Iterated SCC decomposition: for each nontrivial SCC (within alive), calls
// on_component(members, top_priority). Return true to remove the
// top-priority vertices and analyze the remainder, false to drop the whole
// component from further analysis. Every round deactivates at least one
// vertex per surviving component, so this terminates.
void iterated_scc(std::size_t n, const SuccFn& succ_of,
                  const std::function<std::int32_t(std::int32_t)>& priority_of,
                  const std::function<bool(const std::vector<std::int32_t>&, std::int32_t)>&
                      on_component) {
    std::vector<char> alive(n, 1);
    std::vector<std::int32_t> comp;
    for (;;) {
        const int ncomp = tarjan(n, succ_of, alive, comp);
        if (ncomp == 0) return;
        std::vector<std::vector<std::int32_t>> groups(static_cast<std::size_t>(ncomp));
        for (std::size_t v = 0; v < n; ++v)
            if (alive[v])
                groups[static_cast<std::size_t>(comp[v])].push_back(static_cast<std::int32_t>(v));
        for (const auto& group : groups) {
            if (group.empty()) continue;
            bool cyclic = group.size() > 1;
            if (!cyclic) {
                const std::int32_t v = group.front();
                for (std::uint32_t k = 0;; ++k) {
                    const std::int32_t w = succ_of(v, k);
                    if (w < 0) break;
                    if (w == v) {
                        cyclic = true;
                        break;
                    }
                }
            }
            if (!cyclic) {
                alive[static_cast<std::size_t>(group.front())] = 0;
                continue;
            }
            std::int32_t top = std::numeric_limits<std::int32_t>::min();
            for (std::int32_t v : group) top = std::max(top, priority_of(v));
            if (on_component(group, top)) {
                for (std::int32_t v : group)
                    if (priority_of(v) == top) alive[static_cast<std::size_t>(v)] = 0;
            } else {
                for (std::int32_t v : group) alive[static_cast<std::size_t>(v)] = 0;
            }
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Zielonka
// ---------------------------------------------------------------------------

namespace {

struct SubResult {
    std::vector<vertex_t> win[2];
    std::vector<StrategyEdge> strat[2];
};

class ZielonkaSolver {
public:
    ZielonkaSolver(const ParityGame& g,
                   std::optional<std::chrono::steady_clock::time_point> deadline)
        : g_(g),
          deadline_(deadline),
          in_sub_(static_cast<std::size_t>(g.vertex_count()), 0),
          in_z_(static_cast<std::size_t>(g.vertex_count()), 0),
          cnt_(static_cast<std::size_t>(g.vertex_count()), 0),
          epoch_(0) {}

    SubResult run(std::vector<vertex_t> verts);

private:
    struct Frame {
        std::vector<vertex_t> verts;
        int phase = 0;
        std::int32_t p = 0;
        Player alpha = Player::even;
        std::vector<vertex_t> seeds;
        std::vector<vertex_t> A;
        std::vector<StrategyEdge> tau;
        std::vector<vertex_t> B;
        std::vector<StrategyEdge> rho;
        SubResult first;
    };

    void check_deadline() const {
        if (deadline_ && std::chrono::steady_clock::now() > *deadline_)
            throw TimeoutError("zielonka deadline exceeded");
    }

    // attractor for `pl` toward `seed` within `verts`; appends attracted
    // vertices (seed first) to out and pl's strategy edges for attracted
    // vertices to strat
    void attract(const std::vector<vertex_t>& verts, Player pl, const std::vector<vertex_t>& seed,
                 std::vector<vertex_t>& out, std::vector<StrategyEdge>& strat) {
        ++epoch_;
        for (vertex_t v : verts) {
            in_sub_[static_cast<std::size_t>(v)] = epoch_;
            in_z_[static_cast<std::size_t>(v)] = 0;
        }
        for (vertex_t v : verts) {
            std::int32_t c = 0;
            for (vertex_t s : g_.successors(v))
                if (in_sub_[static_cast<std::size_t>(s)] == epoch_) ++c;
            cnt_[static_cast<std::size_t>(v)] = c;
        }
        const std::size_t first = out.size();
        for (vertex_t v : seed) {
            in_z_[static_cast<std::size_t>(v)] = epoch_;
            out.push_back(v);
        }
        for (std::size_t i = first; i < out.size(); ++i) {
            const vertex_t w = out[i];
            for (vertex_t u : g_.predecessors(w)) {
                if (in_sub_[static_cast<std::size_t>(u)] != epoch_ ||
                    in_z_[static_cast<std::size_t>(u)] == epoch_)
                    continue;
                if (g_.owner(u) == pl) {
                    in_z_[static_cast<std::size_t>(u)] = epoch_;
                    out.push_back(u);
                    strat.emplace_back(u, w);
                } else if (--cnt_[static_cast<std::size_t>(u)] == 0) {
                    in_z_[static_cast<std::size_t>(u)] = epoch_;
                    out.push_back(u);
                }
            }
        }
    }

    const ParityGame& g_;
    std::optional<std::chrono::steady_clock::time_point> deadline_;
    std::vector<std::uint32_t> in_sub_;
    std::vector<std::uint32_t> in_z_;
    std::vector<std::int32_t> cnt_;
    std::uint32_t epoch_;
};

SubResult ZielonkaSolver::run(std::vector<vertex_t> verts) {
    std::vector<Frame> stack;
    SubResult returned;
    stack.emplace_back();
    stack.back().verts = std::move(verts);

    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.phase == 0) {
            check_deadline();
            if (f.verts.empty()) {
                returned = SubResult{};
                stack.pop_back();
                continue;
            }
            f.p = std::numeric_limits<std::int32_t>::min();
            for (vertex_t v : f.verts) f.p = std::max(f.p, g_.priority(v));
            f.alpha = priority_winner(f.p);
            f.seeds.clear();
            for (vertex_t v : f.verts)
                if (g_.priority(v) == f.p) f.seeds.push_back(v);
            attract(f.verts, f.alpha, f.seeds, f.A, f.tau);
            std::vector<vertex_t> rest;
            {
                // in_z_ still marks A from the attract call
                for (vertex_t v : f.verts)
                    if (in_z_[static_cast<std::size_t>(v)] != epoch_) rest.push_back(v);
            }
            f.phase = 1;
            stack.emplace_back();
            stack.back().verts = std::move(rest);
            continue;
        }
        if (f.phase == 1) {
            f.first = std::move(returned);
            const Player opp = opponent(f.alpha);
            if (f.first.win[player_index(opp)].empty()) {
                // alpha wins the whole subgame
                SubResult res;
                auto& win = res.win[player_index(f.alpha)];
                auto& strat = res.strat[player_index(f.alpha)];
                win = std::move(f.verts);
                strat = std::move(f.first.strat[player_index(f.alpha)]);
                strat.insert(strat.end(), f.tau.begin(), f.tau.end());
                // top-priority seeds of alpha pick any successor that stays
                std::vector<char> member(static_cast<std::size_t>(g_.vertex_count()), 0);
                for (vertex_t v : win) member[static_cast<std::size_t>(v)] = 1;
                for (vertex_t v : f.seeds) {
                    if (g_.owner(v) != f.alpha) continue;
                    vertex_t pick = Strategy::none;
                    for (vertex_t s : g_.successors(v))
                        if (member[static_cast<std::size_t>(s)]) {
                            pick = s;
                            break;
                        }
                    assert(pick != Strategy::none);
                    strat.emplace_back(v, pick);
                }
                returned = std::move(res);
                stack.pop_back();
                continue;
            }
            // the opponent keeps a dominion; re-attract and recurse again
            attract(f.verts, opp, f.first.win[player_index(opp)], f.B, f.rho);
            std::vector<vertex_t> rest;
            for (vertex_t v : f.verts)
                if (in_z_[static_cast<std::size_t>(v)] != epoch_) rest.push_back(v);
            f.phase = 2;
            stack.emplace_back();
            stack.back().verts = std::move(rest);
            continue;
        }
        // phase 2
        SubResult second = std::move(returned);
        const Player opp = opponent(f.alpha);
        SubResult res;
        res.win[player_index(f.alpha)] = std::move(second.win[player_index(f.alpha)]);
        res.strat[player_index(f.alpha)] = std::move(second.strat[player_index(f.alpha)]);
        auto& owin = res.win[player_index(opp)];
        auto& ostrat = res.strat[player_index(opp)];
        owin = std::move(second.win[player_index(opp)]);
        owin.insert(owin.end(), f.B.begin(), f.B.end());
        ostrat = std::move(second.strat[player_index(opp)]);
        ostrat.insert(ostrat.end(), f.rho.begin(), f.rho.end());
        const auto& dstrat = f.first.strat[player_index(opp)];
        ostrat.insert(ostrat.end(), dstrat.begin(), dstrat.end());
        returned = std::move(res);
        stack.pop_back();
    }
    return returned;
}

} // namespace

Solution zielonka(const ParityGame& g, const VertexSet& active,
                  std::optional<std::chrono::steady_clock::time_point> deadline) {
    ZielonkaSolver solver(g, deadline);
    SubResult res = solver.run(active.to_vector());
    Solution sol(g.vertex_count());
    for (Player p : {Player::even, Player::odd}) {
        for (vertex_t v : res.win[player_index(p)]) sol.set_winner(v, p);
        for (const auto& [u, s] : res.strat[player_index(p)])
            if (g.owner(u) == p) sol.strategy(p).set(u, s);
    }
    // strategies recorded for a player on vertices the other player won are
    // stale leftovers of inner recursions; drop them
    for (vertex_t v = 0; v < g.vertex_count(); ++v) {
        if (!sol.decided(v)) continue;
        const Player w = sol.winner_of(v);
        sol.strategy(opponent(w)).unset(v);
        if (g.owner(v) != w) sol.strategy(w).unset(v);
    }
    return sol;
}

Solution zielonka(const ParityGame& g,
                  std::optional<std::chrono::steady_clock::time_point> deadline) {
    VertexSet all(g.vertex_count());
    all.fill();
    return zielonka(g, all, deadline);
}

// ---------------------------------------------------------------------------
// brute force
// ---------------------------------------------------------------------------

namespace {

// memoryless strategies of `pl` as an odometer over successor indices
struct StrategySpace {
    std::vector<vertex_t> owned;
    std::vector<std::uint32_t> pick;

    explicit StrategySpace(const ParityGame& g, Player pl) {
        for (vertex_t v = 0; v < g.vertex_count(); ++v)
            if (g.owner(v) == pl) owned.push_back(v);
        pick.assign(owned.size(), 0);
    }

    bool advance(const ParityGame& g) {
        for (std::size_t i = 0; i < owned.size(); ++i) {
            if (++pick[i] < g.successors(owned[i]).size()) return true;
            pick[i] = 0;
        }
        return false;
    }
};

std::uint64_t strategy_count(const ParityGame& g, Player pl, std::uint64_t cap) {
    std::uint64_t product = 1;
    for (vertex_t v = 0; v < g.vertex_count(); ++v) {
        if (g.owner(v) != pl) continue;
        const std::uint64_t d = g.successors(v).size();
        if (d == 0) return 0; // malformed; caller validates elsewhere
        if (product > cap / d + 1) return cap + 1;
        product *= d;
        if (product > cap) return cap + 1;
    }
    return product;
}

// Vertices won by `pl` (the strategy player) under sigma: the opponent
// cannot reach any cycle they win in the sigma-restricted graph.
void won_under(const ParityGame& g, Player pl, const StrategySpace& space,
               std::vector<char>& won_out) {
    const std::size_t n = static_cast<std::size_t>(g.vertex_count());
    std::vector<vertex_t> sigma(n, Strategy::none);
    for (std::size_t i = 0; i < space.owned.size(); ++i)
        sigma[static_cast<std::size_t>(space.owned[i])] =
            g.successors(space.owned[i])[space.pick[i]];

    SuccFn succ = [&](std::int32_t v, std::uint32_t k) -> std::int32_t {
        if (g.owner(static_cast<vertex_t>(v)) == pl) {
            return k == 0 ? sigma[static_cast<std::size_t>(v)] : -1;
        }
        auto s = g.successors(static_cast<vertex_t>(v));
        return k < s.size() ? s[k] : -1;
    };

    const Player opp = opponent(pl);
    std::vector<char> danger(n, 0); // on or leading into an opponent-won cycle
    iterated_scc(
        n, succ, [&](std::int32_t v) { return g.priority(static_cast<vertex_t>(v)); },
        [&](const std::vector<std::int32_t>& members, std::int32_t top) {
            if (priority_winner(top) == opp) {
                for (std::int32_t v : members) danger[static_cast<std::size_t>(v)] = 1;
                return false; // reaching the component is already fatal
            }
            return true;
        });

    // backward closure: the opponent steers, pl is pinned to sigma
    std::vector<vertex_t> queue;
    for (std::size_t v = 0; v < n; ++v)
        if (danger[v]) queue.push_back(static_cast<vertex_t>(v));
    for (std::size_t i = 0; i < queue.size(); ++i) {
        const vertex_t w = queue[i];
        for (vertex_t u : g.predecessors(w)) {
            if (danger[static_cast<std::size_t>(u)]) continue;
            if (g.owner(u) == pl && sigma[static_cast<std::size_t>(u)] != w) continue;
            danger[static_cast<std::size_t>(u)] = 1;
            queue.push_back(u);
        }
    }
    won_out.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) won_out[v] = danger[v] ? 0 : 1;
}

// first strategy of pl winning on all of `target`; nullopt if none
std::optional<std::vector<StrategyEdge>> winning_strategy(const ParityGame& g, Player pl,
                                                          const std::vector<char>& target,
                                                          std::uint64_t cap) {
    if (strategy_count(g, pl, cap) > cap)
        throw EnumerationBound("strategy space exceeds the configured bound");
    StrategySpace space(g, pl);
    std::vector<char> won;
    do {
        won_under(g, pl, space, won);
        bool covers = true;
        for (std::size_t v = 0; v < won.size(); ++v)
            if (target[v] && !won[v]) {
                covers = false;
                break;
            }
        if (covers) {
            std::vector<StrategyEdge> out;
            for (std::size_t i = 0; i < space.owned.size(); ++i)
                if (target[static_cast<std::size_t>(space.owned[i])])
                    out.emplace_back(space.owned[i],
                                     g.successors(space.owned[i])[space.pick[i]]);
            return out;
        }
    } while (space.advance(g));
    return std::nullopt;
}

} // namespace

Solution brute_force(const ParityGame& g, const BruteForceOptions& opts) {
    const std::size_t n = static_cast<std::size_t>(g.vertex_count());
    for (vertex_t v = 0; v < g.vertex_count(); ++v)
        if (g.successors(v).empty())
            throw std::invalid_argument("brute_force needs a left-total game");
    const std::uint64_t cap = opts.max_strategies;
    const std::uint64_t count_even = strategy_count(g, Player::even, cap);
    const std::uint64_t count_odd = strategy_count(g, Player::odd, cap);
    const Player beta = count_even <= count_odd ? Player::even : Player::odd;
    if (std::min(count_even, count_odd) > cap)
        throw EnumerationBound("strategy space exceeds the configured bound (" +
                               std::to_string(cap) + ")");

    // pass 1: union of won sets over all of beta's strategies
    StrategySpace space(g, beta);
    std::vector<char> won, win_beta(n, 0);
    do {
        won_under(g, beta, space, won);
        for (std::size_t v = 0; v < n; ++v)
            if (won[v]) win_beta[v] = 1;
    } while (space.advance(g));

    // pass 2: a single strategy covering the whole region (memoryless
    // determinacy guarantees one exists)
    auto sigma_beta = winning_strategy(g, beta, win_beta, cap);
    assert(sigma_beta.has_value());

    Solution sol(g.vertex_count());
    const Player gamma = opponent(beta);
    for (std::size_t v = 0; v < n; ++v)
        sol.set_winner(static_cast<vertex_t>(v), win_beta[v] ? beta : gamma);
    if (sigma_beta)
        for (const auto& [u, s] : *sigma_beta) sol.strategy(beta).set(u, s);

    // the opponent's witness strategy: enumerate inside their region, which
    // is closed and left-total by determinacy
    VertexSet gamma_region(g.vertex_count());
    for (std::size_t v = 0; v < n; ++v)
        if (!win_beta[v]) gamma_region.insert(static_cast<vertex_t>(v));
    if (!gamma_region.empty()) {
        auto [sub, map] = extract_subgame(g, gamma_region);
        std::vector<vertex_t> back(static_cast<std::size_t>(sub.vertex_count()));
        for (vertex_t v = 0; v < g.vertex_count(); ++v)
            if (map[static_cast<std::size_t>(v)] >= 0)
                back[static_cast<std::size_t>(map[static_cast<std::size_t>(v)])] = v;
        std::vector<char> all(static_cast<std::size_t>(sub.vertex_count()), 1);
        auto sigma_gamma = winning_strategy(sub, gamma, all, cap);
        assert(sigma_gamma.has_value());
        if (sigma_gamma)
            for (const auto& [u, s] : *sigma_gamma)
                sol.strategy(gamma).set(back[static_cast<std::size_t>(u)],
                                        back[static_cast<std::size_t>(s)]);
    }
    return sol;
}

// ---------------------------------------------------------------------------
// verifier
// ---------------------------------------------------------------------------

Verdict verify(const ParityGame& g, const Solution& s) {
    Verdict verdict;
    auto& out = verdict.violations;
    const vertex_t n = g.vertex_count();
    if (s.vertex_count() != n) {
        out.push_back({-1, "totality", "solution size does not match the game"});
        verdict.accepted = false;
        return verdict;
    }
    for (vertex_t v = 0; v < n; ++v)
        if (!s.decided(v)) out.push_back({v, "totality", "vertex has no winner"});
    if (!out.empty()) {
        verdict.accepted = false;
        return verdict;
    }

    for (Player alpha : {Player::even, Player::odd}) {
        std::vector<vertex_t> region;
        std::vector<std::int32_t> idx(static_cast<std::size_t>(n), -1);
        for (vertex_t v = 0; v < n; ++v)
            if (s.winner_of(v) == alpha) {
                idx[static_cast<std::size_t>(v)] = static_cast<std::int32_t>(region.size());
                region.push_back(v);
            }
        const Strategy& sigma = s.strategy(alpha);

        for (vertex_t v : region) {
            if (g.owner(v) == alpha) {
                if (!sigma.defined(v)) {
                    out.push_back({v, "strategy-missing", "winner-owned vertex without strategy"});
                    continue;
                }
                const vertex_t t = sigma[v];
                if (!g.has_edge(v, t))
                    out.push_back({v, "strategy-not-edge", "strategy pair is not an edge"});
                else if (idx[static_cast<std::size_t>(t)] < 0)
                    out.push_back({v, "strategy-escapes",
                                   "strategy leaves the winning region via " + std::to_string(t)});
            } else {
                for (vertex_t t : g.successors(v))
                    if (idx[static_cast<std::size_t>(t)] < 0)
                        out.push_back({v, "closure",
                                       "opponent vertex can leave the region via " +
                                           std::to_string(t)});
            }
        }

        // no strategy-consistent cycle inside the region is won by the
        // opponent
        SuccFn succ = [&, alpha](std::int32_t i, std::uint32_t k) -> std::int32_t {
            const vertex_t v = region[static_cast<std::size_t>(i)];
            if (g.owner(v) == alpha) {
                if (k > 0 || !sigma.defined(v)) return -1;
                return idx[static_cast<std::size_t>(sigma[v])]; // -1 if outside
            }
            auto ss = g.successors(v);
            for (std::uint32_t j = k; j < ss.size(); ++j) {
                const std::int32_t w = idx[static_cast<std::size_t>(ss[j])];
                if (w >= 0) return w;
            }
            return -1;
        };
        iterated_scc(
            region.size(), succ,
            [&](std::int32_t i) { return g.priority(region[static_cast<std::size_t>(i)]); },
            [&](const std::vector<std::int32_t>& members, std::int32_t top) {
                if (priority_winner(top) != alpha) {
                    out.push_back({region[static_cast<std::size_t>(members.front())],
                                   "losing-cycle",
                                   "strategy-consistent cycle with top priority " +
                                       std::to_string(top) + " won by the opponent"});
                    return false;
                }
                return true;
            });
    }

    verdict.accepted = out.empty();
    return verdict;
}

} // namespace pg
