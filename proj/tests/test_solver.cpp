#include <doctest.h>

#include <sstream>

#include "pg/attractor.hpp"
#include "pg/oracle.hpp"
#include "pg/solver.hpp"
#include "support.hpp"

using namespace pg;
using namespace pgtest;

namespace {

// tangle trace lines as (sorted vertex set, escapes-empty) pairs, in order
struct TraceLine {
    std::vector<vertex_t> vertices;
    bool dominion;
};

std::vector<TraceLine> parse_trace(const std::string& text) {
    std::vector<TraceLine> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("tangle ", 0) != 0) continue;
        TraceLine t;
        const auto vpos = line.find("V={");
        const auto vend = line.find('}', vpos);
        std::string vs = line.substr(vpos + 3, vend - vpos - 3);
        std::stringstream ss(vs);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) t.vertices.push_back(std::stoi(tok));
        const auto epos = line.find("esc={", vend);
        const auto eend = line.find('}', epos);
        t.dominion = eend == epos + 5;
        out.push_back(std::move(t));
    }
    return out;
}

std::pair<Solution, SolverStats> solve_traced(const ParityGame& g, Variant variant,
                                              std::string* trace_out,
                                              bool skip_reduction = false) {
    SolverConfig cfg;
    cfg.variant = variant;
    cfg.skip_reduction = skip_reduction;
    cfg.validate_tangles = true;
    std::ostringstream trace;
    cfg.trace = &trace;
    auto res = solve(g, cfg);
    if (trace_out) *trace_out = trace.str();
    return res;
}

} // namespace

TEST_CASE("fig4 standard run follows the distraction chain") {
    const ParityGame g = fig4();
    std::string trace;
    auto [sol, stats] = solve_traced(g, Variant::tl, &trace);

    for (vertex_t v = 0; v < 8; ++v) CHECK(sol.winner_of(v) == Player::odd);
    CHECK(verify(g, sol).accepted);

    const auto lines = parse_trace(trace);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].vertices == std::vector<vertex_t>{2});       // {c} first
    CHECK(!lines[0].dominion);
    CHECK(lines[1].vertices == std::vector<vertex_t>{0, 4});    // then {a,e}
    CHECK(!lines[1].dominion);
    CHECK(lines[2].vertices == std::vector<vertex_t>{6});       // dominion {g}
    CHECK(lines[2].dominion);
    CHECK(lines[3].vertices == std::vector<vertex_t>{0, 1, 2, 3}); // then the rest
    CHECK(lines[3].dominion);

    CHECK(stats.tangles_learned == 4);
    CHECK(stats.dominions_found == 2);
    CHECK(stats.search_calls == 2);
    CHECK(stats.turns == 0);
}

TEST_CASE("search is independently callable and resumable") {
    const ParityGame g = fig4();
    TangleStore store(8);
    VertexSet active(8);
    active.fill();
    const SearchResult first = search(g, active, store, {});
    CHECK(first.dominion.vertices == std::vector<vertex_t>{6});
    CHECK(first.dominion.priority == 1);
    CHECK(store.size() == 2); // {c} and {a,e}

    // remove the dominion attractor by hand, prune, search the rest
    SubgameMask sub(g);
    const AttractorResult att = attr(sub, Player::odd, set_of(8, {6}));
    CHECK(att.attracted == set_of(8, {4, 5, 6, 7}));
    for (vertex_t v : att.attracted) active.erase(v);
    store.prune(att.attracted);
    CHECK(store.size() == 1);

    const SearchResult second = search(g, active, store, {});
    CHECK(second.dominion.vertices == std::vector<vertex_t>{0, 1, 2, 3});
    CHECK(second.dominion.priority == 3);
}

TEST_CASE("fig1: all variants, odd wins everywhere with d->e") {
    const ParityGame g = fig1();
    for (Variant variant : {Variant::tl, Variant::atl, Variant::otftl, Variant::otfatl}) {
        CAPTURE(variant_name(variant));
        std::string trace;
        auto [sol, stats] = solve_traced(g, variant, &trace);
        for (vertex_t v = 0; v < 5; ++v) CHECK(sol.winner_of(v) == Player::odd);
        CHECK(sol.strategy_odd[3] == 4); // d -> e
        CHECK(verify(g, sol).accepted);
        // the 3-tangle {c,e} or the 5-tangle {b,c,d,e} shows up in the trace
        bool witnessed = false;
        for (const TraceLine& line : parse_trace(trace))
            if (line.vertices == std::vector<vertex_t>{2, 4} ||
                line.vertices == std::vector<vertex_t>{1, 2, 3, 4})
                witnessed = true;
        CHECK(witnessed);
    }
}

TEST_CASE("fig4 alternating records its turns") {
    const ParityGame g = fig4();
    std::string trace;
    auto [sol, stats] = solve_traced(g, Variant::atl, &trace);
    for (vertex_t v = 0; v < 8; ++v) CHECK(sol.winner_of(v) == Player::odd);
    CHECK(stats.turns >= 2);
    CHECK(stats.turns == 3); // even starts (priority 4), odd, even, odd finds {g}
    const auto lines = parse_trace(trace);
    REQUIRE(!lines.empty());
    CHECK(lines[0].vertices == std::vector<vertex_t>{2});
}

TEST_CASE("fig4 on-the-fly refines instead of restarting") {
    const ParityGame g = fig4();
    std::string trace_tl, trace_otf;
    auto [sol_tl, stats_tl] = solve_traced(g, Variant::tl, &trace_tl);
    auto [sol_otf, stats_otf] = solve_traced(g, Variant::otftl, &trace_otf);
    CHECK(winners_of(sol_tl) == winners_of(sol_otf));
    // same tangles in the same order on this game, fewer regions recomputed
    CHECK(trace_tl == trace_otf);
    CHECK(stats_otf.decomposition_iterations < stats_tl.decomposition_iterations);
    CHECK(stats_otf.turns == 0);
}

TEST_CASE("single even self-loop vertex is an immediate dominion") {
    const ParityGame g = make_game({2}, {Player::even}, {{0}});
    TangleStore store(1);
    VertexSet all(1);
    all.fill();
    const SearchResult res = search(g, all, store, {});
    CHECK(res.dominion.vertices == std::vector<vertex_t>{0});
    CHECK(res.stats.decomposition_iterations == 1);
    auto [sol, stats] = solve(g, {});
    CHECK(sol.winner_of(0) == Player::even);
    CHECK(sol.strategy_even[0] == 0);
}

TEST_CASE("two-priority games: every learned tangle is a dominion") {
    for (Variant variant : {Variant::tl, Variant::atl, Variant::otftl, Variant::otfatl}) {
        for (std::size_t i = 0; i < 100; ++i) {
            const ParityGame g = corpus_game(i, 30, 1, 2, 0x2121, 1);
            SolverConfig cfg;
            cfg.variant = variant;
            auto [sol, stats] = solve(g, cfg);
            CHECK(stats.tangles_learned == stats.dominions_found);
        }
    }
}

TEST_CASE("skip_reduction stays correct on all variants") {
    for (Variant variant : {Variant::tl, Variant::atl, Variant::otftl, Variant::otfatl}) {
        for (std::size_t i = 0; i < 60; ++i) {
            const ParityGame g = corpus_game(i, 20, 1, 2, 0x5C1);
            std::string trace;
            auto [sol, stats] = solve_traced(g, variant, &trace, true);
            const Solution ref = zielonka(g);
            CHECK(winners_of(sol) == winners_of(ref));
            CHECK(verify(g, sol).accepted);
        }
    }
}

TEST_CASE("self-loop preprocessing composes with the solver") {
    SolverConfig cfg;
    cfg.self_loop_preprocess = true;
    auto [sol, stats] = solve(fig4(), cfg);
    for (vertex_t v = 0; v < 8; ++v) CHECK(sol.winner_of(v) == Player::odd);
    CHECK(verify(fig4(), sol).accepted);
    // the whole first dominion came from preprocessing
    CHECK(stats.search_calls == 1);
}

TEST_CASE("tangle budget failure is an InternalError") {
    SolverConfig cfg;
    cfg.max_tangles = 1; // fig4 needs four
    CHECK_THROWS_AS(solve(fig4(), cfg), InternalError);
}

TEST_CASE("deadline in the past raises TimeoutError") {
    SolverConfig cfg;
    cfg.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
    CHECK_THROWS_AS(solve(fig4(), cfg), TimeoutError);
}

TEST_CASE("stats line and json carry every counter") {
    auto [sol, stats] = solve(fig4(), {});
    const std::string line = stats.to_line();
    CHECK(line.find("tangles_learned=4") != std::string::npos);
    CHECK(line.find("dominions_found=2") != std::string::npos);
    CHECK(line.find("turns=0") != std::string::npos);
    const std::string json = stats.to_json_string();
    CHECK(json.find("\"tangles_learned\":4") != std::string::npos);
}

TEST_CASE("all variants agree with zielonka and verify on random games") {
    for (std::size_t i = 0; i < 200; ++i) {
        const ParityGame g = corpus_game(i, 30, 1, 2, 0x909);
        const std::string ref = winners_of(zielonka(g));
        for (Variant variant : {Variant::tl, Variant::atl, Variant::otftl, Variant::otfatl}) {
            SolverConfig cfg;
            cfg.variant = variant;
            cfg.validate_tangles = true;
            auto [sol, stats] = solve(g, cfg);
            CAPTURE(i);
            CAPTURE(variant_name(variant));
            CHECK(winners_of(sol) == ref);
            CHECK(verify(g, sol).accepted);
        }
    }
}
