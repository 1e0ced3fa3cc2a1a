#include "aec/graph.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace aec {

Graph::Graph(std::size_t vertex_count, std::vector<Edge> edges) : edges_(std::move(edges)) {
    std::vector<std::size_t> degree(vertex_count, 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        Edge& e = edges_[i];
        if (e.u >= vertex_count || e.v >= vertex_count) {
            throw InvalidArgument("edge " + std::to_string(i) + " has an endpoint outside [0, " +
                                  std::to_string(vertex_count) + ")");
        }
        if (e.u == e.v) throw InvalidArgument("self-loop at vertex " + std::to_string(e.u));
        if (e.u > e.v) std::swap(e.u, e.v);
        ++degree[e.u];
        ++degree[e.v];
    }

    offsets_.assign(vertex_count + 1, 0);
    for (std::size_t v = 0; v < vertex_count; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
    incidences_.resize(offsets_.back());
    std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto id = static_cast<EdgeId>(i);
        incidences_[fill[edges_[i].u]++] = {edges_[i].v, id};
        incidences_[fill[edges_[i].v]++] = {edges_[i].u, id};
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
        auto first = incidences_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]);
        auto last = incidences_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]);
        std::sort(first, last, [](const Incidence& a, const Incidence& b) { return a.neighbour < b.neighbour; });
        auto dup = std::adjacent_find(first, last, [](const Incidence& a, const Incidence& b) {
            return a.neighbour == b.neighbour;
        });
        if (dup != last) {
            throw InvalidArgument("duplicate edge " + std::to_string(v) + " " + std::to_string(dup->neighbour));
        }
    }

    if (vertex_count > 0) {
        auto [lo, hi] = std::minmax_element(degree.begin(), degree.end());
        min_degree_ = *lo;
        max_degree_ = *hi;
    }
}

std::optional<EdgeId> Graph::find_edge(VertexId u, VertexId v) const noexcept {
    if (u >= vertex_count() || v >= vertex_count()) return std::nullopt;
    if (degree(u) > degree(v)) std::swap(u, v);
    auto inc = incident(u);
    auto it = std::lower_bound(inc.begin(), inc.end(), v,
                               [](const Incidence& a, VertexId target) { return a.neighbour < target; });
    if (it != inc.end() && it->neighbour == v) return it->edge;
    return std::nullopt;
}

bool Graph::adjacent(EdgeId a, EdgeId b) const noexcept {
    if (a == b) return false;
    const Edge& x = edges_[a];
    const Edge& y = edges_[b];
    return x.u == y.u || x.u == y.v || x.v == y.u || x.v == y.v;
}

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

struct CycleSearch {
    std::size_t best;  // smallest cycle length found, or the initial bound
    std::vector<VertexId> witness;
};

// BFS from every root. A non-tree edge x-y closes a closed walk of length
// dist[x] + dist[y] + 1 that contains a cycle at most that long; when the root
// lies on a shortest cycle the walk is that cycle, so the minimum is exact.
CycleSearch search_short_cycles(const Graph& g, std::size_t bound, bool want_witness) {
    const std::size_t n = g.vertex_count();
    CycleSearch result{bound, {}};
    std::vector<std::size_t> dist(n, kUnreached);
    std::vector<EdgeId> parent_edge(n, 0);
    std::vector<VertexId> queue;
    queue.reserve(n);
    std::vector<VertexId> touched;

    for (VertexId root = 0; root < n; ++root) {
        if (g.degree(root) < 2) continue;
        queue.clear();
        queue.push_back(root);
        dist[root] = 0;
        touched.assign(1, root);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const VertexId x = queue[head];
            if (2 * dist[x] + 1 >= result.best) break;
            for (const Incidence& inc : g.incident(x)) {
                if (x != root && inc.edge == parent_edge[x]) continue;
                const VertexId y = inc.neighbour;
                if (dist[y] == kUnreached) {
                    dist[y] = dist[x] + 1;
                    parent_edge[y] = inc.edge;
                    queue.push_back(y);
                    touched.push_back(y);
                } else if (dist[y] >= dist[x]) {
                    const std::size_t len = dist[x] + dist[y] + 1;
                    if (len < result.best) {
                        result.best = len;
                        if (want_witness) {
                            std::vector<VertexId> left{x};
                            std::vector<VertexId> right{y};
                            while (left.back() != root) left.push_back(g.other(parent_edge[left.back()], left.back()));
                            while (right.back() != root) right.push_back(g.other(parent_edge[right.back()], right.back()));
                            // Drop the shared tail so the walk becomes a simple cycle.
                            while (left.size() >= 2 && right.size() >= 2 &&
                                   left[left.size() - 2] == right[right.size() - 2]) {
                                left.pop_back();
                                right.pop_back();
                            }
                            right.pop_back();
                            std::vector<VertexId> cycle(left.rbegin(), left.rend());
                            cycle.insert(cycle.end(), right.begin(), right.end());
                            result.witness = std::move(cycle);
                        }
                    }
                }
            }
        }
        for (VertexId v : touched) dist[v] = kUnreached;
    }
    if (want_witness && result.best >= bound) result.witness.clear();
    return result;
}

}  // namespace

Girth girth(const Graph& g) {
    const auto found = search_short_cycles(g, kUnreached, false);
    return found.best == kUnreached ? Girth::unbounded() : Girth::finite(found.best);
}

std::vector<VertexId> shortest_cycle(const Graph& g) {
    return search_short_cycles(g, kUnreached, true).witness;
}

bool has_cycle_shorter_than(const Graph& g, std::size_t bound) {
    if (bound <= 3) return false;
    return search_short_cycles(g, bound, false).best < bound;
}

std::vector<std::size_t> bfs_distances(const Graph& g, VertexId source, std::size_t max_depth) {
    std::vector<std::size_t> dist(g.vertex_count(), kUnreached);
    std::vector<VertexId> queue{source};
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const VertexId x = queue[head];
        if (dist[x] == max_depth) continue;
        for (const Incidence& inc : g.incident(x)) {
            if (dist[inc.neighbour] == kUnreached) {
                dist[inc.neighbour] = dist[x] + 1;
                queue.push_back(inc.neighbour);
            }
        }
    }
    return dist;
}

}  // namespace aec
