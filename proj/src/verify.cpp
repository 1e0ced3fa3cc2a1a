#include "aec/verify.hpp"

#include <algorithm>
#include <string>

namespace aec {

namespace {

void check_sizes(const Graph& g, const PartialEdgeColouring& chi) {
    if (chi.edge_count() != g.edge_count()) {
        throw InvalidArgument("colouring covers " + std::to_string(chi.edge_count()) + " edges but the graph has " +
                              std::to_string(g.edge_count()));
    }
}

using ColourIndex = std::vector<std::vector<std::pair<Colour, EdgeId>>>;

// Per vertex, its coloured incident edges sorted by colour.
ColourIndex index_by_colour(const Graph& g, const PartialEdgeColouring& chi) {
    ColourIndex at(g.vertex_count());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (const Incidence& inc : g.incident(v)) {
            const Colour c = chi.raw()[inc.edge];
            if (c != kUncoloured) at[v].push_back({c, inc.edge});
        }
        std::sort(at[v].begin(), at[v].end());
    }
    return at;
}

std::optional<EdgeId> edge_with_colour(const ColourIndex& at, VertexId v, Colour c) {
    const auto& list = at[v];
    auto it = std::lower_bound(list.begin(), list.end(), std::pair<Colour, EdgeId>{c, 0});
    if (it != list.end() && it->first == c) return it->second;
    return std::nullopt;
}

}  // namespace

std::vector<std::pair<EdgeId, EdgeId>> properness_violations(const Graph& g, const PartialEdgeColouring& chi) {
    check_sizes(g, chi);
    const ColourIndex at = index_by_colour(g, chi);
    std::vector<std::pair<EdgeId, EdgeId>> out;
    for (const auto& list : at) {
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t j = i + 1; j < list.size() && list[j].first == list[i].first; ++j)
                out.push_back({std::min(list[i].second, list[j].second), std::max(list[i].second, list[j].second)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<VertexId> canonical_cycle(const std::vector<VertexId>& cycle) {
    const std::size_t n = cycle.size();
    std::vector<VertexId> best;
    for (bool reversed : {false, true}) {
        for (std::size_t start = 0; start < n; ++start) {
            std::vector<VertexId> cand(n);
            for (std::size_t k = 0; k < n; ++k)
                cand[k] = reversed ? cycle[(start + n - k) % n] : cycle[(start + k) % n];
            if (best.empty() || cand < best) best = std::move(cand);
        }
    }
    return best;
}

std::vector<BicolouredCycle> find_bicoloured_cycles(const Graph& g, const PartialEdgeColouring& chi) {
    auto bad = properness_violations(g, chi);
    if (!bad.empty()) {
        throw NotProperError("colouring is not proper: " + std::to_string(bad.size()) + " conflicting edge pairs",
                             std::move(bad));
    }
    const ColourIndex at = index_by_colour(g, chi);

    std::vector<std::pair<Colour, Colour>> pairs;
    for (const auto& list : at)
        for (std::size_t i = 0; i < list.size(); ++i)
            for (std::size_t j = i + 1; j < list.size(); ++j) pairs.push_back({list[i].first, list[j].first});
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    std::vector<std::vector<EdgeId>> by_colour(chi.palette_size());
    for (EdgeId e = 0; e < chi.edge_count(); ++e)
        if (chi.raw()[e] != kUncoloured) by_colour[chi.raw()[e]].push_back(e);

    std::vector<std::size_t> stamp(g.edge_count(), 0);
    std::vector<BicolouredCycle> out;
    std::vector<VertexId> walk;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [c, d] = pairs[p];
        for (EdgeId start : by_colour[c]) {
            if (stamp[start] == p + 1) continue;
            stamp[start] = p + 1;
            const Edge& e0 = g.edge(start);
            walk.assign({e0.u, e0.v});
            VertexId x = e0.v;
            Colour want = d;
            bool closed = false;
            while (auto f = edge_with_colour(at, x, want)) {
                if (*f == start) {
                    closed = true;
                    break;
                }
                stamp[*f] = p + 1;
                x = g.other(*f, x);
                walk.push_back(x);
                want = want == c ? d : c;
            }
            if (closed) {
                walk.pop_back();
                BicolouredCycle cyc{c, d, canonical_cycle(walk), {}};
                for (std::size_t k = 0; k < cyc.vertices.size(); ++k)
                    cyc.edges.push_back(*g.find_edge(cyc.vertices[k], cyc.vertices[(k + 1) % cyc.vertices.size()]));
                out.push_back(std::move(cyc));
                continue;
            }
            // A path: mark the part behind the start edge too.
            x = e0.u;
            want = d;
            while (auto f = edge_with_colour(at, x, want)) {
                stamp[*f] = p + 1;
                x = g.other(*f, x);
                want = want == c ? d : c;
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const BicolouredCycle& a, const BicolouredCycle& b) {
        if (a.c != b.c) return a.c < b.c;
        if (a.d != b.d) return a.d < b.d;
        return a.vertices < b.vertices;
    });
    return out;
}

bool is_acyclic(const Graph& g, const PartialEdgeColouring& chi) {
    return properness_violations(g, chi).empty() && find_bicoloured_cycles(g, chi).empty();
}

namespace {

class AcyclicSearch {
public:
    AcyclicSearch(const Graph& g, std::size_t k) : g_(g), k_(k), at_(g.vertex_count() * k, -1) {
        // Visit edges so that each new edge touches earlier ones when possible.
        std::vector<char> placed(g.edge_count(), 0);
        std::vector<char> reached(g.vertex_count(), 0);
        for (VertexId root = 0; root < g.vertex_count(); ++root) {
            if (reached[root]) continue;
            std::vector<VertexId> queue{root};
            reached[root] = 1;
            for (std::size_t h = 0; h < queue.size(); ++h) {
                for (const Incidence& inc : g.incident(queue[h])) {
                    if (!placed[inc.edge]) {
                        placed[inc.edge] = 1;
                        order_.push_back(inc.edge);
                    }
                    if (!reached[inc.neighbour]) {
                        reached[inc.neighbour] = 1;
                        queue.push_back(inc.neighbour);
                    }
                }
            }
        }
    }

    bool run() { return extend(0, 0); }

private:
    int& slot(VertexId v, std::size_t c) { return at_[v * k_ + c]; }

    // True iff giving edge uv colour c would close a {c, d}-cycle for some d.
    bool closes_cycle(VertexId u, VertexId v, std::size_t c) {
        for (std::size_t d = 0; d < k_; ++d) {
            if (d == c || slot(u, d) < 0) continue;
            VertexId x = u;
            std::size_t want = d;
            while (slot(x, want) >= 0) {
                x = g_.other(static_cast<EdgeId>(slot(x, want)), x);
                if (x == v) return true;
                want = want == c ? d : c;
            }
        }
        return false;
    }

    bool extend(std::size_t idx, std::size_t used) {
        if (idx == order_.size()) return true;
        const Edge& e = g_.edge(order_[idx]);
        // Colours are interchangeable, so a fresh colour only needs one try.
        const std::size_t limit = std::min(k_, used + 1);
        for (std::size_t c = 0; c < limit; ++c) {
            if (slot(e.u, c) >= 0 || slot(e.v, c) >= 0) continue;
            if (closes_cycle(e.u, e.v, c)) continue;
            slot(e.u, c) = slot(e.v, c) = static_cast<int>(order_[idx]);
            if (extend(idx + 1, std::max(used, c + 1))) return true;
            slot(e.u, c) = slot(e.v, c) = -1;
        }
        return false;
    }

    const Graph& g_;
    std::size_t k_;
    std::vector<int> at_;
    std::vector<EdgeId> order_;
};

}  // namespace

std::optional<std::size_t> brute_force_acyclic_index(const Graph& g, std::size_t max_colours, std::size_t edge_guard) {
    if (g.edge_count() > edge_guard) {
        throw InvalidArgument("exhaustive search limited to " + std::to_string(edge_guard) + " edges, graph has " +
                              std::to_string(g.edge_count()));
    }
    if (g.edge_count() == 0) return 0;
    for (std::size_t k = g.max_degree(); k <= max_colours; ++k)
        if (AcyclicSearch(g, k).run()) return k;
    return std::nullopt;
}

}  // namespace aec
