#include "pg/pgsolver.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>

namespace pg {

namespace {

struct NodeSpec {
    long long id;
    std::int32_t priority;
    Player owner;
    std::vector<vertex_t> successors;
    std::optional<std::string> label;
    int line;
};

class LineScanner {
public:
    LineScanner(std::string_view text, int line) : p_(text.data()), end_(text.data() + text.size()), line_(line) {}

    bool at_end() const { return p_ == end_; }

    void require_spaces() {
        if (p_ == end_ || *p_ != ' ')
            throw ParseError(line_, "expected space");
        while (p_ != end_ && (*p_ == ' ' || *p_ == '\t')) ++p_;
    }

    bool peek_digit() const { return p_ != end_ && std::isdigit(static_cast<unsigned char>(*p_)); }

    long long read_int(const char* what) {
        if (!peek_digit())
            throw ParseError(line_, std::string("expected ") + what);
        long long value = 0;
        while (peek_digit()) {
            value = value * 10 + (*p_ - '0');
            if (value > (1LL << 40))
                throw ParseError(line_, std::string(what) + " out of range");
            ++p_;
        }
        return value;
    }

    bool try_consume(char c) {
        if (p_ != end_ && *p_ == c) {
            ++p_;
            return true;
        }
        return false;
    }

    void require(char c, const char* what) {
        if (!try_consume(c))
            throw ParseError(line_, std::string("expected ") + what);
    }

    std::string read_label() {
        // opening quote already consumed
        std::string out;
        while (p_ != end_ && *p_ != '"') out.push_back(*p_++);
        require('"', "closing '\"' of label");
        return out;
    }

    void require_line_end() {
        while (p_ != end_ && (*p_ == ' ' || *p_ == '\t')) ++p_;
        if (p_ != end_)
            throw ParseError(line_, "unexpected input after ';'");
    }

    bool starts_with(std::string_view prefix) const {
        return std::string_view(p_, static_cast<std::size_t>(end_ - p_)).starts_with(prefix);
    }

    void consume(std::size_t k) { p_ += k; }

private:
    const char* p_;
    const char* end_;
    int line_;
};

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    for (auto& l : lines)
        if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    return lines;
}

} // namespace

ParityGame parse_pgsolver(std::string_view text, const DiagnosticSink& warn) {
    const auto lines = split_lines(text);
    std::vector<NodeSpec> specs;
    bool header_allowed = true;

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        std::string_view line = lines[i];
        if (line.empty()) {
            if (i + 1 == lines.size()) break; // trailing newline
            throw ParseError(line_no, "empty line");
        }
        LineScanner sc(line, line_no);
        if (header_allowed && sc.starts_with("parity")) {
            sc.consume(6);
            sc.require_spaces();
            sc.read_int("header vertex id");
            sc.require(';', "';' after header");
            sc.require_line_end();
            header_allowed = false;
            continue;
        }
        header_allowed = false;

        NodeSpec spec;
        spec.line = line_no;
        spec.id = sc.read_int("vertex id");
        sc.require_spaces();
        spec.priority = static_cast<std::int32_t>(sc.read_int("priority"));
        sc.require_spaces();
        const long long owner = sc.read_int("owner");
        if (owner != 0 && owner != 1)
            throw ParseError(line_no, "owner must be 0 or 1");
        spec.owner = owner == 0 ? Player::even : Player::odd;
        sc.require_spaces();
        if (!sc.peek_digit())
            throw ParseError(line_no, "empty successor list for vertex " + std::to_string(spec.id));
        for (;;) {
            const long long s = sc.read_int("successor id");
            bool dup = false;
            for (vertex_t seen : spec.successors)
                if (seen == s) dup = true;
            if (dup) {
                if (warn)
                    warn("line " + std::to_string(line_no) + ": duplicate successor " +
                         std::to_string(s) + " of vertex " + std::to_string(spec.id) + " dropped");
            } else {
                spec.successors.push_back(static_cast<vertex_t>(s));
            }
            if (!sc.try_consume(',')) break;
        }
        if (sc.try_consume(' ')) {
            sc.require('"', "label or ';'");
            spec.label = sc.read_label();
        }
        sc.require(';', "';' at end of vertex line");
        sc.require_line_end();
        specs.push_back(std::move(spec));
    }

    if (specs.empty())
        throw ParseError(static_cast<int>(lines.size()) + 1, "no vertices");

    long long max_id = -1;
    for (const NodeSpec& s : specs) max_id = std::max(max_id, s.id);
    if (max_id + 1 != static_cast<long long>(specs.size())) {
        // either a duplicate id or a gap; report the precise offender
        std::vector<char> seen(static_cast<std::size_t>(max_id) + 1, 0);
        for (const NodeSpec& s : specs) {
            if (seen[static_cast<std::size_t>(s.id)])
                throw ParseError(s.line, "duplicate vertex id " + std::to_string(s.id));
            seen[static_cast<std::size_t>(s.id)] = 1;
        }
        for (long long v = 0; v <= max_id; ++v)
            if (!seen[static_cast<std::size_t>(v)])
                throw ParseError(specs.back().line,
                                 "sparse vertex ids: id " + std::to_string(v) + " missing");
    } else {
        std::vector<char> seen(specs.size(), 0);
        for (const NodeSpec& s : specs) {
            if (seen[static_cast<std::size_t>(s.id)])
                throw ParseError(s.line, "duplicate vertex id " + std::to_string(s.id));
            seen[static_cast<std::size_t>(s.id)] = 1;
        }
    }

    const vertex_t n = static_cast<vertex_t>(specs.size());
    std::vector<std::int32_t> pr(static_cast<std::size_t>(n));
    std::vector<Player> own(static_cast<std::size_t>(n), Player::even);
    std::vector<std::vector<vertex_t>> succ(static_cast<std::size_t>(n));
    std::vector<std::optional<std::string>> lab(static_cast<std::size_t>(n));
    for (NodeSpec& s : specs) {
        const std::size_t v = static_cast<std::size_t>(s.id);
        for (vertex_t t : s.successors)
            if (t < 0 || t >= n)
                throw ParseError(s.line, "successor id " + std::to_string(t) + " out of range");
        pr[v] = s.priority;
        own[v] = s.owner;
        succ[v] = std::move(s.successors);
        lab[v] = std::move(s.label);
    }
    return ParityGame::from_parts(std::move(pr), std::move(own), std::move(succ), std::move(lab));
}

ParityGame parse_pgsolver(std::istream& in, const DiagnosticSink& warn) {
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    return parse_pgsolver(std::string_view(text), warn);
}

void write_pgsolver(const ParityGame& g, std::ostream& out) {
    out << "parity " << (g.vertex_count() - 1) << ";\n";
    for (vertex_t v = 0; v < g.vertex_count(); ++v) {
        out << v << ' ' << g.priority(v) << ' ' << player_char(g.owner(v)) << ' ';
        auto succ = g.successors(v);
        for (std::size_t i = 0; i < succ.size(); ++i) {
            if (i) out << ',';
            out << succ[i];
        }
        if (g.label(v)) out << " \"" << *g.label(v) << '"';
        out << ";\n";
    }
}

std::string write_pgsolver(const ParityGame& g) {
    std::ostringstream out;
    write_pgsolver(g, out);
    return out.str();
}

void write_solution(const ParityGame& g, const Solution& s, std::ostream& out) {
    out << "paritysol " << (g.vertex_count() - 1) << ";\n";
    for (vertex_t v = 0; v < g.vertex_count(); ++v) {
        const Player w = s.winner_of(v);
        out << v << ' ' << player_char(w);
        if (g.owner(v) == w && s.strategy(w).defined(v)) out << ' ' << s.strategy(w)[v];
        out << ";\n";
    }
}

std::string write_solution(const ParityGame& g, const Solution& s) {
    std::ostringstream out;
    write_solution(g, s, out);
    return out.str();
}

Solution parse_solution(const ParityGame& g, std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty())
        throw ParseError(1, "empty solution");
    {
        LineScanner sc(lines[0], 1);
        if (!sc.starts_with("paritysol"))
            throw ParseError(1, "expected 'paritysol' header");
        sc.consume(9);
        sc.require_spaces();
        sc.read_int("header vertex id");
        sc.require(';', "';' after header");
        sc.require_line_end();
    }
    const vertex_t n = g.vertex_count();
    Solution sol(n);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        if (lines[i].empty()) {
            if (i + 1 == lines.size()) break;
            throw ParseError(line_no, "empty line");
        }
        LineScanner sc(lines[i], line_no);
        const long long id = sc.read_int("vertex id");
        if (id < 0 || id >= n)
            throw ParseError(line_no, "vertex id " + std::to_string(id) + " out of range");
        if (seen[static_cast<std::size_t>(id)])
            throw ParseError(line_no, "duplicate vertex id " + std::to_string(id));
        seen[static_cast<std::size_t>(id)] = 1;
        sc.require_spaces();
        const long long w = sc.read_int("winner");
        if (w != 0 && w != 1)
            throw ParseError(line_no, "winner must be 0 or 1");
        const Player winner = w == 0 ? Player::even : Player::odd;
        sol.set_winner(static_cast<vertex_t>(id), winner);
        if (sc.try_consume(' ')) {
            const long long strat = sc.read_int("strategy successor");
            if (strat < 0 || strat >= n)
                throw ParseError(line_no, "strategy successor out of range");
            sol.strategy(winner).set(static_cast<vertex_t>(id), static_cast<vertex_t>(strat));
        }
        sc.require(';', "';' at end of line");
        sc.require_line_end();
    }
    for (vertex_t v = 0; v < n; ++v)
        if (!seen[static_cast<std::size_t>(v)])
            throw ParseError(static_cast<int>(lines.size()),
                             "vertex " + std::to_string(v) + " missing from solution");
    return sol;
}

Solution parse_solution(const ParityGame& g, std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    return parse_solution(g, std::string_view(text));
}

} // namespace pg
