#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "pg/pgsolver.hpp"
#include "support.hpp"

using namespace pg;
using namespace pgtest;

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "pgtl-cli-tests";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    const fs::path out = work_dir() / "stdout.txt";
    const fs::path err = work_dir() / "stderr.txt";
    const std::string cmd = std::string(PG_CLI_BIN) + " " + args + " > " + out.string() +
                            " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    res.out = slurp(out.string());
    res.err = slurp(err.string());
    return res;
}

std::string write_temp(const std::string& name, const std::string& content) {
    const fs::path p = work_dir() / name;
    std::ofstream f(p);
    f << content;
    return p.string();
}

} // namespace

TEST_CASE("cli: solve fig4 emits an all-odd solution") {
    const RunResult res = run_cli("solve --variant tl " + fixture_path("fig4.pg"));
    REQUIRE(res.exit_code == 0);
    const Solution sol = parse_solution(fig4(), res.out);
    for (vertex_t v = 0; v < 8; ++v) CHECK(sol.winner_of(v) == Player::odd);
}

TEST_CASE("cli: solve then verify round-trips through files") {
    const std::string sol_path = (work_dir() / "fig4.sol").string();
    const RunResult solve_res =
        run_cli("solve --variant otfatl --out " + sol_path + " " + fixture_path("fig4.pg"));
    REQUIRE(solve_res.exit_code == 0);
    const RunResult verify_res = run_cli("verify " + fixture_path("fig4.pg") + " " + sol_path);
    CHECK(verify_res.exit_code == 0);
}

TEST_CASE("cli: malformed input exits 1") {
    const std::string bad = write_temp("bad.pg", "parity 2;\n0 0 0 ;\n");
    const RunResult res = run_cli("solve " + bad);
    CHECK(res.exit_code == 1);
    CHECK(res.err.find("error") != std::string::npos);
}

TEST_CASE("cli: corrupted winner exits 3 with a named violation") {
    const RunResult solve_res = run_cli("solve " + fixture_path("fig4.pg"));
    REQUIRE(solve_res.exit_code == 0);
    std::string text = solve_res.out;
    const auto pos = text.find("3 1;");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 4, "3 0;");
    const std::string bad = write_temp("fig4-bad.sol", text);
    const RunResult verify_res = run_cli("verify " + fixture_path("fig4.pg") + " " + bad);
    CHECK(verify_res.exit_code == 3);
    CHECK(verify_res.err.find("violation:") != std::string::npos);
}

TEST_CASE("cli: vertex-count mismatch exits 1") {
    const RunResult solve_res = run_cli("solve " + fixture_path("fig1.pg"));
    REQUIRE(solve_res.exit_code == 0);
    const std::string sol = write_temp("fig1.sol", solve_res.out);
    const RunResult res = run_cli("verify " + fixture_path("fig4.pg") + " " + sol);
    CHECK(res.exit_code == 1);
}

TEST_CASE("cli: atl stats line reports the turns") {
    const RunResult res = run_cli("solve --variant atl --stats " + fixture_path("fig4.pg"));
    REQUIRE(res.exit_code == 0);
    const auto pos = res.err.find("turns=");
    REQUIRE(pos != std::string::npos);
    const int turns = std::stoi(res.err.substr(pos + 6));
    CHECK(turns >= 2);
}

TEST_CASE("cli: trace shows the fig4 narrative order") {
    const RunResult res = run_cli("solve --variant tl --trace " + fixture_path("fig4.pg"));
    REQUIRE(res.exit_code == 0);
    const auto c = res.err.find("tangle 0 p=1 V={2} esc={3}");
    const auto ae = res.err.find("tangle 1 p=0 V={0,4} esc={5}");
    const auto dom = res.err.find("tangle 2 p=1 V={6} esc={}");
    REQUIRE(c != std::string::npos);
    REQUIRE(ae != std::string::npos);
    REQUIRE(dom != std::string::npos);
    CHECK(c < ae);
    CHECK(ae < dom);
}

TEST_CASE("cli: budget failure exits 2") {
    const RunResult res = run_cli("solve --max-tangles 1 " + fixture_path("fig4.pg"));
    CHECK(res.exit_code == 2);
    CHECK(res.err.find("internal error") != std::string::npos);
}

TEST_CASE("cli: unknown variant is an input error") {
    const RunResult res = run_cli("solve --variant nope " + fixture_path("fig1.pg"));
    CHECK(res.exit_code != 0);
}

TEST_CASE("cli: generate is deterministic and validates") {
    const std::string a = run_cli("generate --n 50 --seed 9 --max-outdeg 3").out;
    const std::string b = run_cli("generate --n 50 --seed 9 --max-outdeg 3").out;
    CHECK(a == b);
    const ParityGame g = parse_pgsolver(a);
    CHECK(g.vertex_count() == 50);
    CHECK(validate(g).empty());
}

TEST_CASE("cli: zlk variant solves and verifies") {
    const std::string sol_path = (work_dir() / "fig1-zlk.sol").string();
    const RunResult res =
        run_cli("solve --variant zlk --out " + sol_path + " " + fixture_path("fig1.pg"));
    REQUIRE(res.exit_code == 0);
    CHECK(run_cli("verify " + fixture_path("fig1.pg") + " " + sol_path).exit_code == 0);
}

TEST_CASE("cli: bench over the fixture directory") {
    const std::string csv_path = (work_dir() / "bench.csv").string();
    const RunResult res = run_cli("bench " + std::string(PG_FIXTURE_DIR) +
                                  " --variants tl,atl,otftl,otfatl --out " + csv_path);
    REQUIRE(res.exit_code == 0);
    const std::string csv = slurp(csv_path);
    CHECK(csv.rfind("# pgtl bench csv v1\n", 0) == 0);
    int rows = 0;
    for (char ch : csv)
        if (ch == '\n') ++rows;
    CHECK(rows == 2 + 8); // comment + header + 2 games x 4 variants
}

TEST_CASE("cli: bench --gen corpus") {
    const RunResult res = run_cli("bench --gen 20:20:1:2:7:3 --variants tl,zlk");
    REQUIRE(res.exit_code == 0);
    int rows = 0;
    std::istringstream in(res.out);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#' && line.rfind("game,", 0) != 0) ++rows;
    CHECK(rows == 6);
}
