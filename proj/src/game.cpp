#include "pg/game.hpp"

#include <algorithm>
#include <numeric>

namespace pg {

ParityGame ParityGame::from_parts(std::vector<std::int32_t> priorities, std::vector<Player> owners,
                                  std::vector<std::vector<vertex_t>> successors,
                                  std::vector<std::optional<std::string>> labels,
                                  std::optional<std::vector<std::vector<vertex_t>>> predecessors) {
    ParityGame g;
    const std::size_t n = priorities.size();
    g.priority_ = std::move(priorities);
    g.owner_ = std::move(owners);
    if (labels.empty()) labels.resize(n);
    g.labels_ = std::move(labels);

    g.succ_off_.resize(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.succ_off_[v + 1] = g.succ_off_[v] + successors[v].size();
    g.succ_data_.reserve(g.succ_off_[n]);
    for (std::size_t v = 0; v < n; ++v)
        g.succ_data_.insert(g.succ_data_.end(), successors[v].begin(), successors[v].end());

    std::vector<std::vector<vertex_t>> preds;
    if (predecessors.has_value()) {
        preds = std::move(*predecessors);
        preds.resize(n);
    } else {
        preds.resize(n);
        for (std::size_t v = 0; v < n; ++v)
            for (vertex_t s : successors[v])
                if (s >= 0 && static_cast<std::size_t>(s) < n)
                    preds[static_cast<std::size_t>(s)].push_back(static_cast<vertex_t>(v));
    }
    g.pred_off_.resize(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v) g.pred_off_[v + 1] = g.pred_off_[v] + preds[v].size();
    g.pred_data_.reserve(g.pred_off_[n]);
    for (std::size_t v = 0; v < n; ++v)
        g.pred_data_.insert(g.pred_data_.end(), preds[v].begin(), preds[v].end());

    g.by_priority_desc_.resize(n);
    std::iota(g.by_priority_desc_.begin(), g.by_priority_desc_.end(), 0);
    std::stable_sort(g.by_priority_desc_.begin(), g.by_priority_desc_.end(),
                     [&](vertex_t a, vertex_t b) { return g.priority_[a] > g.priority_[b]; });
    g.max_priority_ = n == 0 ? -1 : g.priority_[g.by_priority_desc_[0]];
    return g;
}

std::vector<Violation> validate(const ParityGame& g) {
    std::vector<Violation> out;
    const vertex_t n = g.vertex_count();
    for (vertex_t v = 0; v < n; ++v) {
        auto succ = g.successors(v);
        if (succ.empty())
            out.push_back({v, "left-total", "vertex has no successor"});
        for (vertex_t s : succ) {
            if (s < 0 || s >= n)
                out.push_back({v, "edge-range", "successor " + std::to_string(s) + " out of range"});
        }
        // duplicates (successor lists are short; quadratic scan is fine)
        for (std::size_t i = 0; i < succ.size(); ++i)
            for (std::size_t j = i + 1; j < succ.size(); ++j)
                if (succ[i] == succ[j]) {
                    out.push_back({v, "duplicate-successor",
                                   "successor " + std::to_string(succ[i]) + " listed twice"});
                    j = succ.size();
                    break;
                }
        if (g.priority(v) < 0)
            out.push_back({v, "priority-range", "negative priority"});
    }
    // predecessors must be exactly the transpose of successors
    std::vector<std::vector<vertex_t>> expect(static_cast<std::size_t>(n));
    for (vertex_t v = 0; v < n; ++v)
        for (vertex_t s : g.successors(v))
            if (s >= 0 && s < n) expect[static_cast<std::size_t>(s)].push_back(v);
    for (vertex_t v = 0; v < n; ++v) {
        auto pred = g.predecessors(v);
        std::vector<vertex_t> have(pred.begin(), pred.end());
        std::vector<vertex_t>& want = expect[static_cast<std::size_t>(v)];
        std::sort(have.begin(), have.end());
        std::sort(want.begin(), want.end());
        if (have != want)
            out.push_back({v, "transpose", "predecessor list does not match successor transpose"});
    }
    return out;
}

std::pair<ParityGame, std::vector<vertex_t>> extract_subgame(const ParityGame& g,
                                                             const VertexSet& keep) {
    const vertex_t n = g.vertex_count();
    std::vector<vertex_t> map(static_cast<std::size_t>(n), -1);
    std::vector<std::int32_t> pr;
    std::vector<Player> own;
    std::vector<std::optional<std::string>> lab;
    vertex_t next = 0;
    for (vertex_t v : keep) {
        map[static_cast<std::size_t>(v)] = next++;
        pr.push_back(g.priority(v));
        own.push_back(g.owner(v));
        lab.push_back(g.label(v));
    }
    std::vector<std::vector<vertex_t>> succ(static_cast<std::size_t>(next));
    for (vertex_t v : keep) {
        auto& row = succ[static_cast<std::size_t>(map[static_cast<std::size_t>(v)])];
        for (vertex_t s : g.successors(v))
            if (keep.contains(s)) row.push_back(map[static_cast<std::size_t>(s)]);
    }
    return {ParityGame::from_parts(std::move(pr), std::move(own), std::move(succ), std::move(lab)),
            std::move(map)};
}

} // namespace pg
