// pgtl: parity game solving via tangle learning.
// Subcommands: solve, verify, generate, bench.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pg/bench.hpp"
#include "pg/errors.hpp"
#include "pg/generator.hpp"
#include "pg/oracle.hpp"
#include "pg/pgsolver.hpp"
#include "pg/self_loops.hpp"
#include "pg/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;    // parse errors, unreadable or mismatched files
constexpr int kExitInternal = 2; // invariant or budget failure
constexpr int kExitRejected = 3; // verifier rejected the solution

pg::ParityGame read_game(const std::string& path) {
    const pg::DiagnosticSink warn = [](const std::string& msg) {
        std::cerr << "warning: " << msg << '\n';
    };
    if (path.empty() || path == "-") return pg::parse_pgsolver(std::cin, warn);
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return pg::parse_pgsolver(in, warn);
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

struct SolveArgs {
    std::string input;
    std::string out;
    std::string variant = "tl";
    bool skip_reduction = false;
    bool self_loops = false;
    bool stats = false;
    bool trace = false;
    std::uint64_t max_tangles = 10'000'000;
};

int cmd_solve(const SolveArgs& args) {
    pg::ParityGame game = read_game(args.input);

    pg::Solution sol;
    pg::SolverStats stats;
    if (args.variant == "zlk") {
        if (args.self_loops) {
            const pg::SelfLoopResult pre = pg::solve_self_loops(game);
            sol = pg::zielonka(game, pre.remaining);
            for (pg::vertex_t v = 0; v < game.vertex_count(); ++v) {
                if (!pre.partial.decided(v)) continue;
                const pg::Player w = pre.partial.winner_of(v);
                sol.set_winner(v, w);
                if (pre.partial.strategy(w).defined(v))
                    sol.strategy(w).set(v, pre.partial.strategy(w)[v]);
            }
        } else {
            sol = pg::zielonka(game);
        }
    } else {
        pg::SolverConfig cfg;
        const auto variant = pg::variant_from_name(args.variant);
        if (!variant) throw std::runtime_error("unknown variant " + args.variant);
        cfg.variant = *variant;
        cfg.skip_reduction = args.skip_reduction;
        cfg.self_loop_preprocess = args.self_loops;
        cfg.max_tangles = args.max_tangles;
        if (args.trace) cfg.trace = &std::cerr;
        auto [s, st] = pg::solve(game, cfg);
        sol = std::move(s);
        stats = st;
    }

    if (args.stats) std::cerr << stats.to_line() << '\n';
    write_output(args.out, pg::write_solution(game, sol));
    return kExitOk;
}

int cmd_verify(const std::string& game_path, const std::string& solution_path) {
    pg::ParityGame game = read_game(game_path);
    std::ifstream in(solution_path);
    if (!in) throw std::runtime_error("cannot open " + solution_path);
    const pg::Solution sol = pg::parse_solution(game, in);
    const pg::Verdict verdict = pg::verify(game, sol);
    if (verdict.accepted) return kExitOk;
    for (const pg::Violation& v : verdict.violations)
        std::cerr << "violation: " << v.rule << " at vertex " << v.vertex << ": " << v.detail
                  << '\n';
    return kExitRejected;
}

struct GenerateArgs {
    pg::vertex_t n = 0;
    std::int32_t max_priority = -1;
    std::int32_t min_outdeg = 1;
    std::int32_t max_outdeg = 2;
    bool self_loops = false;
    std::uint64_t seed = 0;
    std::string out;
};

int cmd_generate(const GenerateArgs& args) {
    pg::GenSpec spec;
    spec.vertex_count = args.n;
    spec.max_priority = args.max_priority;
    spec.min_outdeg = args.min_outdeg;
    spec.max_outdeg = args.max_outdeg;
    spec.self_loops = args.self_loops;
    spec.seed = args.seed;
    write_output(args.out, pg::write_pgsolver(pg::generate(spec)));
    return kExitOk;
}

struct BenchArgs {
    std::vector<std::string> inputs; // files or directories of .pg files
    std::vector<std::string> gens;   // N:maxprio:l:h:seed[:count]
    std::string variants = "tl,atl,otftl,otfatl";
    double timeout = 0.0;
    int workers = 1;
    std::string out;
    bool skip_reduction = false;
    bool self_loops = false;
};

std::vector<pg::BenchJob> collect_jobs(const BenchArgs& args) {
    std::vector<pg::BenchJob> jobs;
    for (const std::string& input : args.inputs) {
        namespace fs = std::filesystem;
        if (fs::is_directory(input)) {
            std::vector<std::string> paths;
            for (const auto& entry : fs::directory_iterator(input))
                if (entry.is_regular_file() && entry.path().extension() == ".pg")
                    paths.push_back(entry.path().string());
            std::sort(paths.begin(), paths.end());
            for (const std::string& p : paths)
                jobs.push_back({fs::path(p).filename().string(), p});
        } else {
            jobs.push_back({fs::path(input).filename().string(), input});
        }
    }
    for (const std::string& gen : args.gens) {
        std::vector<std::uint64_t> fields;
        std::stringstream ss(gen);
        std::string field;
        while (std::getline(ss, field, ':')) fields.push_back(std::stoull(field));
        if (fields.size() < 5 || fields.size() > 6)
            throw std::runtime_error("--gen expects N:maxprio:l:h:seed[:count]");
        const std::uint64_t count = fields.size() == 6 ? fields[5] : 1;
        for (std::uint64_t i = 0; i < count; ++i) {
            pg::GenSpec spec;
            spec.vertex_count = static_cast<pg::vertex_t>(fields[0]);
            spec.max_priority = static_cast<std::int32_t>(fields[1]);
            spec.min_outdeg = static_cast<std::int32_t>(fields[2]);
            spec.max_outdeg = static_cast<std::int32_t>(fields[3]);
            spec.seed = fields[4] + i;
            jobs.push_back({"gen-" + std::to_string(fields[0]) + "-s" + std::to_string(spec.seed),
                            spec});
        }
    }
    return jobs;
}

int cmd_bench(const BenchArgs& args) {
    const std::vector<pg::BenchJob> jobs = collect_jobs(args);
    if (jobs.empty()) throw std::runtime_error("no games to bench");

    std::vector<pg::BenchVariant> variants;
    std::stringstream ss(args.variants);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name == "zlk") {
            variants.push_back({std::nullopt, name});
        } else if (auto v = pg::variant_from_name(name)) {
            variants.push_back({*v, name});
        } else {
            throw std::runtime_error("unknown variant " + name);
        }
    }

    pg::BenchOptions opts;
    opts.timeout_seconds = args.timeout;
    opts.workers = args.workers;
    opts.base.skip_reduction = args.skip_reduction;
    opts.base.self_loop_preprocess = args.self_loops;

    const std::vector<pg::BenchRecord> records = pg::run_bench(jobs, variants, opts);
    std::ostringstream csv;
    write_bench_csv(csv, records);
    write_output(args.out, csv.str());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"parity game solving via tangle learning"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand("solve", "solve a parity game");
    solve->add_option("input", solve_args.input, "game file (PGSolver format; - for stdin)");
    solve->add_option("--variant", solve_args.variant, "tl|atl|otftl|otfatl|zlk")
        ->check(CLI::IsMember({"tl", "atl", "otftl", "otfatl", "zlk"}));
    solve->add_flag("--skip-reduction", solve_args.skip_reduction,
                    "skip the region reduction step");
    solve->add_flag("--self-loops", solve_args.self_loops, "self-loop preprocessing");
    solve->add_flag("--stats", solve_args.stats, "print solver counters to stderr");
    solve->add_flag("--trace", solve_args.trace, "print learned tangles to stderr");
    solve->add_option("--max-tangles", solve_args.max_tangles, "tangle budget before giving up");
    solve->add_option("--out", solve_args.out, "solution output path (default stdout)");

    std::string verify_game, verify_solution;
    CLI::App* verify = app.add_subcommand("verify", "verify a solution against a game");
    verify->add_option("game", verify_game, "game file")->required();
    verify->add_option("solution", verify_solution, "solution file")->required();

    GenerateArgs gen_args;
    CLI::App* generate = app.add_subcommand("generate", "generate a random game");
    generate->add_option("--n", gen_args.n, "vertex count")->required();
    generate->add_option("--max-priority", gen_args.max_priority,
                         "priorities drawn from [0, max] (default n)");
    generate->add_option("--min-outdeg", gen_args.min_outdeg, "minimum out-degree");
    generate->add_option("--max-outdeg", gen_args.max_outdeg, "maximum out-degree");
    generate->add_flag("--self-loops", gen_args.self_loops, "allow self-loops");
    generate->add_option("--seed", gen_args.seed, "generator seed");
    generate->add_option("--out", gen_args.out, "output path (default stdout)");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "run solver variants over a corpus");
    bench->add_option("inputs", bench_args.inputs, "game files or directories of .pg files");
    bench->add_option("--gen", bench_args.gens,
                      "generated corpus N:maxprio:l:h:seed[:count] (repeatable)");
    bench->add_option("--variants", bench_args.variants, "comma-separated variant list");
    bench->add_option("--timeout", bench_args.timeout, "per-run timeout in seconds");
    bench->add_option("--workers", bench_args.workers, "parallel jobs");
    bench->add_flag("--skip-reduction", bench_args.skip_reduction,
                    "skip the region reduction step");
    bench->add_flag("--self-loops", bench_args.self_loops, "self-loop preprocessing");
    bench->add_option("--out", bench_args.out, "CSV output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (solve->parsed()) return cmd_solve(solve_args);
        if (verify->parsed()) return cmd_verify(verify_game, verify_solution);
        if (generate->parsed()) return cmd_generate(gen_args);
        if (bench->parsed()) return cmd_bench(bench_args);
    } catch (const pg::InternalError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
