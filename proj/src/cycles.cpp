#include "aec/cycles.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace aec {

namespace {

bool fits(PairLabel label, bool wants_c) {
    if (label == PairLabel::Both) return true;
    if (label == PairLabel::None) return false;
    return (label == PairLabel::COnly) == wants_c;
}

}  // namespace

bool is_alternating_arc(const PairLabel* first, std::size_t length) {
    for (bool start_c : {true, false}) {
        bool ok = true;
        for (std::size_t t = 0; t < length && ok; ++t) ok = fits(first[t], (t % 2 == 0) == start_c);
        if (ok) return true;
    }
    return false;
}

std::optional<std::size_t> cycle_multiplicity(const std::vector<PairLabel>& labels) {
    const std::size_t n = labels.size();
    if (n < 3) throw InvalidArgument("cycle must have at least 3 edges");
    if (std::find(labels.begin(), labels.end(), PairLabel::None) != labels.end()) return std::nullopt;

    // Cut the cycle at position s, then best[j] = fewest arcs covering the
    // first j edges of the rotated sequence.
    std::vector<PairLabel> rotated(n);
    std::vector<std::size_t> best(n + 1);
    std::size_t answer = std::numeric_limits<std::size_t>::max();
    for (std::size_t s = 0; s < n; ++s) {
        std::rotate_copy(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(s), labels.end(),
                         rotated.begin());
        best[0] = 0;
        for (std::size_t j = 1; j <= n; ++j) {
            best[j] = std::numeric_limits<std::size_t>::max();
            for (std::size_t i = j; i-- > 0;) {
                if (!is_alternating_arc(rotated.data() + i, j - i)) break;  // longer arcs ending at j fail too
                best[j] = std::min(best[j], best[i] + 1);
            }
        }
        answer = std::min(answer, best[n]);
    }
    return answer;
}

CycleRegistry build_cycle_registry(const Graph& g, std::size_t l_max, std::size_t cap) {
    CycleRegistry reg;
    reg.l_max = l_max;
    if (l_max < 3) return reg;
    const std::size_t n = g.vertex_count();
    std::vector<char> on_path(n, 0);
    std::vector<VertexId> path;
    std::vector<EdgeId> path_edges;
    // Explicit stack of (vertex, next incidence index).
    std::vector<std::pair<VertexId, std::size_t>> stack;

    for (VertexId s = 0; s < n; ++s) {
        path.assign(1, s);
        path_edges.clear();
        on_path[s] = 1;
        stack.assign(1, {s, 0});
        while (!stack.empty()) {
            auto& [x, next] = stack.back();
            const auto inc = g.incident(x);
            if (next == inc.size()) {
                on_path[x] = 0;
                stack.pop_back();
                path.pop_back();
                if (!path_edges.empty()) path_edges.pop_back();
                continue;
            }
            const Incidence step = inc[next++];
            const VertexId y = step.neighbour;
            if (y == s) {
                if (path.size() >= 3 && path[1] < path.back()) {
                    if (reg.size() == cap) {
                        throw GenerationError("cycle registry exceeds " + std::to_string(cap) +
                                              " cycles of length <= " + std::to_string(l_max) + "; lower l_max");
                    }
                    reg.vertices.push_back(path);
                    reg.edges.push_back(path_edges);
                    reg.edges.back().push_back(step.edge);
                }
                continue;
            }
            if (y < s || on_path[y] || path.size() == l_max) continue;
            on_path[y] = 1;
            path.push_back(y);
            path_edges.push_back(step.edge);
            stack.push_back({y, 0});
        }
        on_path[s] = 0;
    }
    return reg;
}

}  // namespace aec
