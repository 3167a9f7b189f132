#include "pg/solver.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "engine.hpp"
#include "pg/self_loops.hpp"

namespace pg {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::tl: return "tl";
        case Variant::atl: return "atl";
        case Variant::otftl: return "otftl";
        case Variant::otfatl: return "otfatl";
    }
    return "?";
}

std::optional<Variant> variant_from_name(std::string_view name) {
    if (name == "tl") return Variant::tl;
    if (name == "atl") return Variant::atl;
    if (name == "otftl") return Variant::otftl;
    if (name == "otfatl") return Variant::otfatl;
    return std::nullopt;
}

SolverStats& SolverStats::operator+=(const SolverStats& o) {
    tangles_learned += o.tangles_learned;
    dominions_found += o.dominions_found;
    search_calls += o.search_calls;
    decomposition_iterations += o.decomposition_iterations;
    turns += o.turns;
    tangle_attractions += o.tangle_attractions;
    max_region_count = std::max(max_region_count, o.max_region_count);
    return *this;
}

std::string SolverStats::to_line() const {
    std::ostringstream os;
    os << "tangles_learned=" << tangles_learned << " dominions_found=" << dominions_found
       << " search_calls=" << search_calls << " decomposition_iterations="
       << decomposition_iterations << " turns=" << turns << " tangle_attractions="
       << tangle_attractions << " max_region_count=" << max_region_count;
    return os.str();
}

std::string SolverStats::to_json_string() const {
    nlohmann::json j{{"tangles_learned", tangles_learned},
                     {"dominions_found", dominions_found},
                     {"search_calls", search_calls},
                     {"decomposition_iterations", decomposition_iterations},
                     {"turns", turns},
                     {"tangle_attractions", tangle_attractions},
                     {"max_region_count", max_region_count}};
    return j.dump();
}

namespace {

using detail::Arena;
using detail::kFree;
using detail::kRemoved;

struct RegionRecord {
    std::int32_t priority;
    Player player;
    std::uint32_t begin; // slice of the region pool
    std::uint32_t end;
    std::uint32_t head_count; // seeds (priority-p vertices) are the slice's prefix
};

class SearchDriver {
public:
    SearchDriver(const ParityGame& g, TangleStore& store, const SolverConfig& cfg, Arena& arena,
                 SolverStats& stats)
        : g_(g),
          store_(store),
          cfg_(cfg),
          arena_(arena),
          stats_(stats),
          alternating_(cfg.variant == Variant::atl || cfg.variant == Variant::otfatl),
          on_the_fly_(cfg.variant == Variant::otftl || cfg.variant == Variant::otfatl) {}

    // One search call. Expects region[v] == kFree exactly on the active
    // subgame. Recorded regions stay assigned until release_regions().
    Tangle run();

    void release_regions() {
        for (vertex_t v : pool_) free_vertex(v);
        pool_.clear();
        records_.clear();
        parity_count_[0] = parity_count_[1] = 0;
        cursor_ = 0;
    }

private:
    void check_deadline() const {
        if (cfg_.deadline && std::chrono::steady_clock::now() > *cfg_.deadline)
            throw TimeoutError("solver deadline exceeded");
    }

    void free_vertex(vertex_t v) {
        arena_.region[static_cast<std::size_t>(v)] = kFree;
        arena_.strategy[static_cast<std::size_t>(v)] = Strategy::none;
    }

    // Computes the next region of the top-down decomposition, or nothing when
    // every active vertex is assigned.
    std::optional<RegionRecord> next_region() {
        const auto order = g_.by_priority_desc();
        while (cursor_ < order.size() &&
               arena_.region[static_cast<std::size_t>(order[cursor_])] != kFree)
            ++cursor_;
        if (cursor_ == order.size()) return std::nullopt;
        check_deadline();
        const std::int32_t p = g_.priority(order[cursor_]);
        seeds_.clear();
        std::size_t scan = cursor_;
        while (scan < order.size() && g_.priority(order[scan]) == p) {
            if (arena_.region[static_cast<std::size_t>(order[scan])] == kFree)
                seeds_.push_back(order[scan]);
            ++scan;
        }
        cursor_ = scan;
        ++stats_.decomposition_iterations;
        RegionRecord rec;
        rec.priority = p;
        rec.player = priority_winner(p);
        rec.begin = static_cast<std::uint32_t>(pool_.size());
        rec.head_count = static_cast<std::uint32_t>(seeds_.size());
        const detail::AttractOutcome outcome =
            detail::attract_region(arena_, &store_, rec.player, p, seeds_, pool_);
        stats_.tangle_attractions += outcome.fired_tangles.size();
        rec.end = static_cast<std::uint32_t>(pool_.size());
        return rec;
    }

    void record(const RegionRecord& rec) {
        records_.push_back(rec);
        ++parity_count_[player_index(rec.player)];
        stats_.max_region_count = std::max(stats_.max_region_count,
                                           static_cast<std::uint64_t>(records_.size()));
    }

    std::vector<Tangle> extract_from(const RegionRecord& rec, bool highest) {
        const std::span<const vertex_t> verts{pool_.data() + rec.begin,
                                              static_cast<std::size_t>(rec.end - rec.begin)};
        const std::span<const vertex_t> heads{pool_.data() + rec.begin, rec.head_count};
        arena_.begin_mark_epoch();
        if (cfg_.skip_reduction) {
            if (detail::any_head_escapes(arena_, rec.player, rec.priority, heads)) return {};
        } else {
            detail::reduce_region_marks(arena_, rec.player, rec.priority, heads);
        }
        return detail::collect_tangles(arena_, rec.player, rec.priority, verts, heads, highest);
    }

    void trace_tangle(const Tangle& t) const {
        if (!cfg_.trace) return;
        std::ostream& os = *cfg_.trace;
        os << "tangle " << t.id << " p=" << t.priority << " V={";
        for (std::size_t i = 0; i < t.vertices.size(); ++i) {
            if (i) os << ',';
            os << t.vertices[i];
        }
        os << "} esc={";
        for (std::size_t i = 0; i < t.escapes.size(); ++i) {
            if (i) os << ',';
            os << t.escapes[i];
        }
        os << "}\n";
    }

    // Escape placement invariant (always on): every escape of an emitted
    // tangle lies in a higher region of the tangle's own player.
    void check_emission(const Tangle& t, bool dominion) const {
        for (vertex_t e : t.escapes) {
            const std::int32_t r = arena_.region[static_cast<std::size_t>(e)];
            if (r < 0 || r <= t.priority || priority_winner(r) != t.player)
                throw InternalError("emitted tangle has an escape outside higher own regions");
        }
        if (!cfg_.validate_tangles) return;
        VertexSet universe(g_.vertex_count());
        for (vertex_t v = 0; v < g_.vertex_count(); ++v)
            if (arena_.region[static_cast<std::size_t>(v)] != kRemoved) universe.insert(v);
        const std::vector<Violation> bad =
            dominion ? check_dominion(g_, t, universe) : check_tangle(g_, t, universe);
        if (!bad.empty())
            throw InternalError("emitted " + std::string(dominion ? "dominion" : "tangle") +
                                " failed validation: " + bad.front().rule + " (" +
                                bad.front().detail + ")");
    }

    void count_learned() {
        if (++stats_.tangles_learned > cfg_.max_tangles)
            throw InternalError("tangle budget exceeded (" + std::to_string(cfg_.max_tangles) +
                                ")");
    }

    std::optional<Tangle> take_dominion(std::vector<Tangle>& found) {
        for (Tangle& t : found) {
            if (!t.escapes.empty()) continue;
            t.id = store_.allocate_id();
            check_emission(t, true);
            trace_tangle(t);
            count_learned();
            ++stats_.dominions_found;
            return std::move(t);
        }
        return std::nullopt;
    }

    // Merges new tangles into the store; duplicates (possible across turns of
    // the alternating variant) are dropped and do not count as progress.
    std::size_t merge_tangles(std::vector<Tangle>& found, std::int32_t* reset_priority) {
        std::size_t added = 0;
        for (Tangle& t : found) {
            check_emission(t, false);
            std::int32_t lowest_escape_region = std::numeric_limits<std::int32_t>::max();
            for (vertex_t e : t.escapes)
                lowest_escape_region = std::min(
                    lowest_escape_region, arena_.region[static_cast<std::size_t>(e)]);
            int id = -1;
            if (store_.add(std::move(t), &id) == TangleStore::AddResult::duplicate) continue;
            ++added;
            count_learned();
            trace_tangle(store_.tangles().back());
            *reset_priority = std::max(*reset_priority, lowest_escape_region);
        }
        return added;
    }

    // Drops every recorded region with priority <= p and resumes the
    // decomposition cursor there.
    void reset_to(std::int32_t p) {
        std::size_t keep = records_.size();
        while (keep > 0 && records_[keep - 1].priority <= p) --keep;
        const std::uint32_t begin =
            keep == records_.size() ? static_cast<std::uint32_t>(pool_.size()) : records_[keep].begin;
        for (std::size_t i = begin; i < pool_.size(); ++i) free_vertex(pool_[i]);
        pool_.resize(begin);
        for (std::size_t i = keep; i < records_.size(); ++i)
            --parity_count_[player_index(records_[i].player)];
        records_.resize(keep);
        const auto order = g_.by_priority_desc();
        cursor_ = static_cast<std::size_t>(
            std::partition_point(order.begin(), order.end(),
                                 [&](vertex_t v) { return g_.priority(v) > p; }) -
            order.begin());
    }

    void restart() {
        release_regions();
        pass_new_ = 0;
        check_deadline();
    }

    struct ScanOutcome {
        std::optional<Tangle> dominion;
        std::size_t added = 0;
        bool did_reset = false;
    };

    // Re-scan the recorded decomposition top-down for the current turn player
    // (reusing the final decomposition of the previous turn).
    ScanOutcome reuse_scan() {
        ScanOutcome out;
        int seen_parity[2] = {0, 0};
        for (std::size_t i = 0; i < records_.size(); ++i) {
            const RegionRecord rec = records_[i];
            const bool highest = seen_parity[player_index(rec.player)] == 0;
            ++seen_parity[player_index(rec.player)];
            if (rec.player != turn_) continue;
            std::vector<Tangle> found = extract_from(rec, highest);
            if (found.empty()) continue;
            if (auto dom = take_dominion(found)) {
                out.dominion = std::move(dom);
                return out;
            }
            std::int32_t reset_p = -1;
            const std::size_t added = merge_tangles(found, &reset_p);
            out.added += added;
            if (added > 0 && on_the_fly_) {
                reset_to(reset_p);
                out.did_reset = true;
                return out;
            }
        }
        return out;
    }

    const ParityGame& g_;
    TangleStore& store_;
    const SolverConfig& cfg_;
    Arena& arena_;
    SolverStats& stats_;
    const bool alternating_;
    const bool on_the_fly_;

    std::vector<RegionRecord> records_;
    std::vector<vertex_t> pool_;
    int parity_count_[2] = {0, 0};
    std::size_t cursor_ = 0;
    Player turn_ = Player::even;
    std::uint64_t pass_new_ = 0;
    std::vector<vertex_t> seeds_;
};

Tangle SearchDriver::run() {
    ++stats_.search_calls;
    release_regions();
    pass_new_ = 0;

    if (alternating_) {
        const auto order = g_.by_priority_desc();
        std::size_t i = 0;
        while (i < order.size() && arena_.region[static_cast<std::size_t>(order[i])] != kFree) ++i;
        if (i == order.size()) throw std::invalid_argument("search on an empty subgame");
        turn_ = priority_winner(g_.priority(order[i]));
    }

    for (;;) {
        while (std::optional<RegionRecord> rec_opt = next_region()) {
            const RegionRecord rec = *rec_opt;
            std::vector<Tangle> found;
            if (!alternating_ || rec.player == turn_) {
                const bool highest = parity_count_[player_index(rec.player)] == 0;
                found = extract_from(rec, highest);
            }
            record(rec);
            if (found.empty()) continue;
            if (auto dom = take_dominion(found)) return std::move(*dom);
            std::int32_t reset_p = -1;
            const std::size_t added = merge_tangles(found, &reset_p);
            if (added == 0) continue; // duplicates only; keep decomposing
            pass_new_ += added;
            if (on_the_fly_) reset_to(reset_p);
        }

        // full decomposition reached the bottom
        if (pass_new_ > 0) {
            restart();
            continue;
        }
        if (!alternating_)
            throw InternalError("full decomposition learned no new tangle");
        ++stats_.turns;
        turn_ = opponent(turn_);
        ScanOutcome scan = reuse_scan();
        if (scan.dominion) return std::move(*scan.dominion);
        if (scan.added == 0)
            throw InternalError("full decomposition learned no new tangle for either player");
        if (scan.did_reset)
            pass_new_ = 0; // resume the truncated decomposition in the new turn
        else
            restart();
    }
}

SearchResult run_search(const ParityGame& g, const VertexSet& active, TangleStore& store,
                        SolverConfig cfg) {
    if (active.empty()) throw std::invalid_argument("search on an empty subgame");
    Arena arena(g);
    for (vertex_t v : active) arena.region[static_cast<std::size_t>(v)] = kFree;
    SearchResult res;
    SearchDriver driver(g, store, cfg, arena, res.stats);
    res.dominion = driver.run();
    driver.release_regions();
    return res;
}

} // namespace

SearchResult search(const ParityGame& g, const VertexSet& active, TangleStore& store,
                    const SolverConfig& cfg) {
    return run_search(g, active, store, cfg);
}

SearchResult search_alternating(const ParityGame& g, const VertexSet& active, TangleStore& store,
                                const SolverConfig& cfg) {
    SolverConfig c = cfg;
    c.variant = cfg.variant == Variant::otfatl || cfg.variant == Variant::otftl ? Variant::otfatl
                                                                                : Variant::atl;
    return run_search(g, active, store, c);
}

SearchResult search_otf(const ParityGame& g, const VertexSet& active, TangleStore& store,
                        const SolverConfig& cfg) {
    SolverConfig c = cfg;
    c.variant = cfg.variant == Variant::atl || cfg.variant == Variant::otfatl ? Variant::otfatl
                                                                              : Variant::otftl;
    return run_search(g, active, store, c);
}

std::pair<Solution, SolverStats> solve(const ParityGame& g, const SolverConfig& cfg) {
    const vertex_t n = g.vertex_count();
    Solution sol(n);
    SolverStats stats;
    Arena arena(g);
    TangleStore store(n);
    vertex_t remaining = n;

    for (vertex_t v = 0; v < n; ++v) arena.region[static_cast<std::size_t>(v)] = kFree;

    if (cfg.self_loop_preprocess) {
        const SelfLoopResult pre = solve_self_loops(g);
        for (vertex_t v = 0; v < n; ++v) {
            if (!pre.partial.decided(v)) continue;
            const Player w = pre.partial.winner_of(v);
            sol.set_winner(v, w);
            if (g.owner(v) == w && pre.partial.strategy(w).defined(v))
                sol.strategy(w).set(v, pre.partial.strategy(w)[v]);
            arena.region[static_cast<std::size_t>(v)] = kRemoved;
            --remaining;
        }
    }

    SearchDriver driver(g, store, cfg, arena, stats);
    std::vector<vertex_t> dominion_verts;
    while (remaining > 0) {
        Tangle d = driver.run();
        driver.release_regions();
        const Player alpha = priority_winner(d.priority);

        dominion_verts.clear();
        detail::attract_region(arena, nullptr, alpha, d.priority, d.vertices, dominion_verts);
        // inside the dominion the witness strategy wins; the attractor only
        // decides how the rest reaches it
        for (const auto& [u, s] : d.witness) arena.strategy[static_cast<std::size_t>(u)] = s;

        VertexSet removed(n);
        for (vertex_t v : dominion_verts) {
            sol.set_winner(v, alpha);
            if (g.owner(v) == alpha) {
                assert(arena.strategy[static_cast<std::size_t>(v)] != Strategy::none);
                sol.strategy(alpha).set(v, arena.strategy[static_cast<std::size_t>(v)]);
            }
            arena.region[static_cast<std::size_t>(v)] = kRemoved;
            removed.insert(v);
            --remaining;
        }
        store.prune(removed);
    }
    return {sol, stats};
}

} // namespace pg
