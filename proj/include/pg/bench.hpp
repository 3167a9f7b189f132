#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pg/generator.hpp"
#include "pg/solver.hpp"

namespace pg {

/// One game to bench: either a file on disk or a generator recipe.
struct BenchJob {
    std::string game_id;
    std::variant<std::string, GenSpec> source; // path or spec
};

/// A bench variant is a tangle-learning variant or the recursive oracle.
struct BenchVariant {
    std::optional<Variant> tangle; // nullopt = zlk
    std::string name;
};

struct BenchRecord {
    std::string game_id;
    std::string variant;
    double seconds = 0.0;
    bool timed_out = false;
    SolverStats stats;
    std::string error; // empty when the run succeeded
};

struct BenchOptions {
    double timeout_seconds = 0.0; // 0 = none
    int workers = 1;
    SolverConfig base; // skip_reduction / self_loop_preprocess carry over
};

/// Runs every (job, variant) pair, in parallel up to `workers`; rows come
/// back in (job, variant) order regardless of scheduling. Timed-out rows
/// carry the timeout value as their time; per-run failures land in `error`
/// and the harness continues.
std::vector<BenchRecord> run_bench(const std::vector<BenchJob>& jobs,
                                   const std::vector<BenchVariant>& variants,
                                   const BenchOptions& opts);

/// Fixed, versioned CSV: a `# pgtl bench csv v1` comment line, a header row,
/// then one row per record.
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

} // namespace pg
