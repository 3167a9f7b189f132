#pragma once

#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pg/game.hpp"
#include "pg/solution.hpp"

namespace pg {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
    int line;
};

/// Sink for non-fatal parser diagnostics (e.g. deduplicated successors).
using DiagnosticSink = std::function<void(const std::string&)>;

/// Reads the PGSolver game format:
///   game     := header? nodespec+
///   header   := "parity" SP INT ";" NL
///   nodespec := INT SP INT SP OWNER SP SUCCS (SP '"' LABEL '"')? ";" NL
/// Vertex ids must be dense 0-based; the header value is accepted but the
/// vertex count is always max id + 1. Duplicate successors are dropped with a
/// warning on `warn`. Anything else off-grammar is an error.
ParityGame parse_pgsolver(std::istream& in, const DiagnosticSink& warn = {});
ParityGame parse_pgsolver(std::string_view text, const DiagnosticSink& warn = {});

/// Canonical form: header with the maximum vertex id, vertices ascending,
/// successors in stored order. parse(write(g)) == g.
void write_pgsolver(const ParityGame& g, std::ostream& out);
std::string write_pgsolver(const ParityGame& g);

/// Solution format: "paritysol" SP INT ";" NL, then per vertex
/// INT SP WINNER (SP INT)? ";" NL. The writer emits the strategy successor
/// exactly for vertices owned by their winner; the parser accepts any
/// combination and leaves semantic complaints to the verifier.
void write_solution(const ParityGame& g, const Solution& s, std::ostream& out);
std::string write_solution(const ParityGame& g, const Solution& s);

/// Throws ParseError on syntax errors or when the vertex ids do not match
/// `g` (missing, duplicate, or out-of-range entries).
Solution parse_solution(const ParityGame& g, std::istream& in);
Solution parse_solution(const ParityGame& g, std::string_view text);

} // namespace pg
