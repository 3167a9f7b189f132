#include <doctest.h>

#include "pg/oracle.hpp"
#include "pg/pgsolver.hpp"
#include "pg/self_loops.hpp"
#include "support.hpp"

using namespace pg;
using namespace pgtest;

TEST_CASE("parse: one-vertex self-loop") {
    const ParityGame g = parse_pgsolver("parity 1;\n0 0 0 0;");
    CHECK(g.vertex_count() == 1);
    CHECK(g.priority(0) == 0);
    CHECK(g.owner(0) == Player::even);
    REQUIRE(g.successors(0).size() == 1);
    CHECK(g.successors(0)[0] == 0);
}

TEST_CASE("parse: fig1 fixture matches the in-memory builder") {
    const ParityGame g = load_fixture("fig1.pg");
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 7);
    const ParityGame expect = fig1();
    for (vertex_t v = 0; v < 5; ++v) {
        CHECK(g.priority(v) == expect.priority(v));
        CHECK(g.owner(v) == expect.owner(v));
        CHECK(std::vector<vertex_t>(g.successors(v).begin(), g.successors(v).end()) ==
              std::vector<vertex_t>(expect.successors(v).begin(), expect.successors(v).end()));
    }
    CHECK(*g.label(0) == "a");
    CHECK(*g.label(4) == "e");
}

TEST_CASE("parse: errors carry line numbers") {
    SUBCASE("empty successor list") {
        try {
            parse_pgsolver("parity 2;\n0 0 0 ;");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
            CHECK(std::string(e.what()).find("empty successor") != std::string::npos);
        }
    }
    SUBCASE("duplicate vertex id") {
        CHECK_THROWS_AS(parse_pgsolver("0 0 0 0;\n0 1 0 0;"), ParseError);
    }
    SUBCASE("sparse vertex ids") {
        CHECK_THROWS_AS(parse_pgsolver("0 0 0 0;\n2 1 0 0;"), ParseError);
    }
    SUBCASE("successor out of range") {
        CHECK_THROWS_AS(parse_pgsolver("0 0 0 99;"), ParseError);
    }
    SUBCASE("bad owner") { CHECK_THROWS_AS(parse_pgsolver("0 0 2 0;"), ParseError); }
    SUBCASE("comment lines are rejected") {
        CHECK_THROWS_AS(parse_pgsolver("% comment\n0 0 0 0;"), ParseError);
    }
    SUBCASE("start lines are rejected") {
        CHECK_THROWS_AS(parse_pgsolver("parity 0;\nstart 0;\n0 0 0 0;"), ParseError);
    }
    SUBCASE("no vertices") { CHECK_THROWS_AS(parse_pgsolver("parity 3;\n"), ParseError); }
}

TEST_CASE("parse: duplicate successors dedup with a warning") {
    std::vector<std::string> warnings;
    const ParityGame g = parse_pgsolver("0 0 0 1,1,0;\n1 1 1 0;",
                                        [&](const std::string& w) { warnings.push_back(w); });
    REQUIRE(g.successors(0).size() == 2);
    CHECK(g.successors(0)[0] == 1);
    CHECK(g.successors(0)[1] == 0);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("duplicate successor") != std::string::npos);
    CHECK(validate(g).empty());
}

TEST_CASE("write: canonical one-vertex form") {
    const ParityGame g = parse_pgsolver("parity 1;\n0 0 0 0;");
    CHECK(write_pgsolver(g) == "parity 0;\n0 0 0 0;\n");
}

TEST_CASE("write: fig4 fixture round-trips byte-identically") {
    const std::string bytes = slurp(fixture_path("fig4.pg"));
    REQUIRE(!bytes.empty());
    CHECK(write_pgsolver(parse_pgsolver(bytes)) == bytes);
}

TEST_CASE("parse(write(g)) == g on seeded random games") {
    for (std::size_t i = 0; i < 1000; ++i) {
        const ParityGame g = corpus_game(i, 40, 1, 3, 0xA11CE);
        CHECK(parse_pgsolver(write_pgsolver(g)) == g);
    }
}

TEST_CASE("validate: clean fixtures, broken games flagged") {
    CHECK(validate(fig4()).empty());
    CHECK(validate(fig1()).empty());

    SUBCASE("dangling successor") {
        const ParityGame g = ParityGame::from_parts(
            {0, 1, 0, 1, 0}, {Player::even, Player::odd, Player::even, Player::odd, Player::even},
            {{1}, {2}, {3}, {4}, {99}});
        const auto v = validate(g);
        REQUIRE(!v.empty());
        bool found = false;
        for (const Violation& viol : v)
            if (viol.rule == "edge-range" && viol.vertex == 4) found = true;
        CHECK(found);
    }
    SUBCASE("corrupted predecessor lists") {
        const ParityGame g = ParityGame::from_parts(
            {0, 1}, {Player::even, Player::odd}, {{1}, {0}}, {},
            std::vector<std::vector<vertex_t>>{{0}, {1}}); // wrong transpose
        bool found = false;
        for (const Violation& viol : validate(g))
            if (viol.rule == "transpose") found = true;
        CHECK(found);
    }
    SUBCASE("empty successor list") {
        const ParityGame g =
            ParityGame::from_parts({0, 1}, {Player::even, Player::odd}, {{1}, {}});
        bool found = false;
        for (const Violation& viol : validate(g))
            if (viol.rule == "left-total" && viol.vertex == 1) found = true;
        CHECK(found);
    }
    SUBCASE("duplicate successors") {
        const ParityGame g =
            ParityGame::from_parts({0, 1}, {Player::even, Player::odd}, {{1, 1}, {0}});
        bool found = false;
        for (const Violation& viol : validate(g))
            if (viol.rule == "duplicate-successor") found = true;
        CHECK(found);
    }
}

TEST_CASE("solution format round-trip and strict parsing") {
    const ParityGame g = fig4();
    Solution s(g.vertex_count());
    for (vertex_t v = 0; v < 8; ++v) s.set_winner(v, Player::odd);
    s.strategy_odd.set(4, 5);
    s.strategy_odd.set(5, 6);
    s.strategy_odd.set(6, 6);
    s.strategy_odd.set(7, 4);
    const std::string text = write_solution(g, s);
    const Solution back = parse_solution(g, text);
    CHECK(back.winner == s.winner);
    CHECK(back.strategy_odd == s.strategy_odd);
    CHECK(back.strategy_even == s.strategy_even);

    CHECK_THROWS_AS(parse_solution(g, "paritysol 7;\n0 1;\n"), ParseError); // missing vertices
    CHECK_THROWS_AS(parse_solution(g, "0 1;\n"), ParseError);               // missing header
    CHECK_THROWS_AS(parse_solution(fig1(), text), ParseError);              // wrong game
}

TEST_CASE("extract_subgame keeps internal edges only") {
    const ParityGame g = fig4();
    auto [sub, map] = extract_subgame(g, set_of(8, {4, 5, 6, 7}));
    CHECK(sub.vertex_count() == 4);
    CHECK(validate(sub).empty()); // e,f,g,h stay left-total among themselves
    const vertex_t e = map[4], f = map[5];
    CHECK(sub.priority(e) == 0);
    REQUIRE(sub.successors(e).size() == 1); // e->a dropped
    CHECK(sub.successors(e)[0] == f);
}

TEST_CASE("solve_self_loops: fig4 removes the odd dominion around g") {
    const ParityGame g = fig4();
    const SelfLoopResult res = solve_self_loops(g);
    // g (vertex 6) loops with priority 1 and odd owner; its attractor is e,f,g,h
    for (vertex_t v : {4, 5, 6, 7}) {
        CHECK(res.partial.decided(v));
        CHECK(res.partial.winner_of(v) == Player::odd);
        CHECK(!res.remaining.contains(v));
    }
    for (vertex_t v : {0, 1, 2, 3}) {
        CHECK(!res.partial.decided(v));
        CHECK(res.remaining.contains(v));
    }
    CHECK(res.partial.strategy_odd[6] == 6);

    // the removed part is a verified partial solution on its induced subgame
    VertexSet removed(8);
    for (vertex_t v : {4, 5, 6, 7}) removed.insert(v);
    auto [sub, map] = extract_subgame(g, removed);
    Solution sub_sol(sub.vertex_count());
    for (vertex_t v : {4, 5, 6, 7}) {
        const vertex_t nv = map[static_cast<std::size_t>(v)];
        sub_sol.set_winner(nv, Player::odd);
        if (res.partial.strategy_odd.defined(v))
            sub_sol.strategy_odd.set(nv,
                                     map[static_cast<std::size_t>(res.partial.strategy_odd[v])]);
    }
    CHECK(verify(sub, sub_sol).accepted);
}

TEST_CASE("solve_self_loops: no self-loops means no effect") {
    const ParityGame g = fig1();
    const SelfLoopResult res = solve_self_loops(g);
    CHECK(res.remaining.size() == 5);
    for (vertex_t v = 0; v < 5; ++v) CHECK(!res.partial.decided(v));
}

TEST_CASE("solve_self_loops: forced losing cycle goes to the opponent") {
    // priority 2, odd owner, only move is the self-loop
    const ParityGame g = make_game({2}, {Player::odd}, {{0}});
    const SelfLoopResult res = solve_self_loops(g);
    CHECK(res.partial.decided(0));
    CHECK(res.partial.winner_of(0) == Player::even);
    CHECK(res.remaining.empty());
}

TEST_CASE("solve_self_loops partitions cleanly on random games") {
    for (std::size_t i = 0; i < 300; ++i) {
        GenSpec spec;
        spec.vertex_count = static_cast<vertex_t>(2 + (i % 20));
        spec.min_outdeg = 1;
        spec.max_outdeg = std::min<std::int32_t>(3, spec.vertex_count);
        spec.self_loops = true;
        spec.seed = 0x5E1F + i;
        const ParityGame g = generate(spec);
        const SelfLoopResult res = solve_self_loops(g);
        for (vertex_t v = 0; v < g.vertex_count(); ++v)
            CHECK(res.partial.decided(v) != res.remaining.contains(v));
    }
}
