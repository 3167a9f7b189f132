#include "pg/bench.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <ostream>
#include <thread>

#include "pg/oracle.hpp"
#include "pg/pgsolver.hpp"

namespace pg {

namespace {

using Clock = std::chrono::steady_clock;

BenchRecord run_one(const BenchJob& job, const BenchVariant& variant, const BenchOptions& opts) {
    BenchRecord rec;
    rec.game_id = job.game_id;
    rec.variant = variant.name;

    ParityGame game;
    try {
        if (const auto* path = std::get_if<std::string>(&job.source)) {
            std::ifstream in(*path);
            if (!in) throw std::runtime_error("cannot open " + *path);
            game = parse_pgsolver(in);
        } else {
            game = generate(std::get<GenSpec>(job.source));
        }
    } catch (const std::exception& e) {
        rec.error = e.what();
        return rec;
    }

    SolverConfig cfg = opts.base;
    std::optional<Clock::time_point> deadline;
    if (opts.timeout_seconds > 0.0)
        deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(opts.timeout_seconds));
    cfg.deadline = deadline;

    const Clock::time_point start = Clock::now();
    try {
        Solution sol;
        if (variant.tangle) {
            cfg.variant = *variant.tangle;
            auto [s, stats] = solve(game, cfg);
            sol = std::move(s);
            rec.stats = stats;
        } else {
            sol = zielonka(game, deadline);
        }
        rec.seconds = std::chrono::duration<double>(Clock::now() - start).count();
        (void)sol;
    } catch (const TimeoutError&) {
        rec.timed_out = true;
        rec.seconds = opts.timeout_seconds; // PAR-style accounting
    } catch (const std::exception& e) {
        rec.error = e.what();
        rec.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    }
    return rec;
}

} // namespace

std::vector<BenchRecord> run_bench(const std::vector<BenchJob>& jobs,
                                   const std::vector<BenchVariant>& variants,
                                   const BenchOptions& opts) {
    std::vector<BenchRecord> records(jobs.size() * variants.size());
    std::atomic<std::size_t> next{0};
    const std::size_t total = records.size();

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= total) return;
            const BenchJob& job = jobs[i / variants.size()];
            const BenchVariant& variant = variants[i % variants.size()];
            records[i] = run_one(job, variant, opts);
        }
    };

    const int workers = std::max(1, opts.workers);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return records;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "# pgtl bench csv v1\n";
    out << "game,variant,time_s,timeout,tangles_learned,dominions_found,search_calls,"
           "decomposition_iterations,turns,tangle_attractions,max_region_count,error\n";
    for (const BenchRecord& r : records) {
        out << r.game_id << ',' << r.variant << ',' << r.seconds << ',' << (r.timed_out ? 1 : 0)
            << ',' << r.stats.tangles_learned << ',' << r.stats.dominions_found << ','
            << r.stats.search_calls << ',' << r.stats.decomposition_iterations << ','
            << r.stats.turns << ',' << r.stats.tangle_attractions << ','
            << r.stats.max_region_count << ',' << r.error << '\n';
    }
}

} // namespace pg
