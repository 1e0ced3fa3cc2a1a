#include "aec/generators.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "aec/rng.hpp"

namespace aec {

namespace {

using Adjacency = std::vector<std::vector<VertexId>>;

bool contains(const std::vector<VertexId>& list, VertexId v) {
    return std::find(list.begin(), list.end(), v) != list.end();
}

void erase_one(std::vector<VertexId>& list, VertexId v) {
    auto it = std::find(list.begin(), list.end(), v);
    *it = list.back();
    list.pop_back();
}

Graph to_graph(const Adjacency& adj) {
    std::vector<Edge> edges;
    for (VertexId u = 0; u < adj.size(); ++u)
        for (VertexId v : adj[u])
            if (u < v) edges.push_back({u, v});
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return Graph(adj.size(), std::move(edges));
}

// One pairing attempt; false on a dead end.
bool try_pairing(std::size_t n, std::size_t d, KeyedStream& rng, Adjacency& adj) {
    adj.assign(n, {});
    std::vector<VertexId> stubs;
    stubs.reserve(n * d);
    for (VertexId v = 0; v < n; ++v)
        for (std::size_t k = 0; k < d; ++k) stubs.push_back(v);

    std::size_t failures = 0;
    while (!stubs.empty()) {
        const auto i = rng.below(stubs.size());
        const auto j = rng.below(stubs.size());
        const VertexId a = stubs[i];
        const VertexId b = stubs[j];
        if (i != j && a != b && !contains(adj[a], b)) {
            adj[a].push_back(b);
            adj[b].push_back(a);
            // Remove the larger index first so the smaller stays valid.
            for (auto idx : {std::max(i, j), std::min(i, j)}) {
                stubs[idx] = stubs.back();
                stubs.pop_back();
            }
            failures = 0;
            continue;
        }
        if (++failures < 64) continue;
        // Many rejections in a row: check whether any suitable pair is left.
        std::vector<VertexId> open(stubs.begin(), stubs.end());
        std::sort(open.begin(), open.end());
        open.erase(std::unique(open.begin(), open.end()), open.end());
        bool any = false;
        for (std::size_t x = 0; x < open.size() && !any; ++x)
            for (std::size_t y = x + 1; y < open.size() && !any; ++y)
                any = !contains(adj[open[x]], open[y]);
        if (!any) return false;
        failures = 0;
    }
    return true;
}

class MutableRegularGraph {
public:
    explicit MutableRegularGraph(const Graph& g) : adj_(g.vertex_count()), stamp_(g.vertex_count(), 0) {
        for (const Edge& e : g.edges()) add_edge(e.u, e.v);
    }

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Adjacency& adjacency() const noexcept { return adj_; }
    bool has_edge(VertexId a, VertexId b) const { return contains(adj_[a], b); }

    void add_edge(VertexId a, VertexId b) {
        adj_[a].push_back(b);
        adj_[b].push_back(a);
        index_[key(a, b)] = edges_.size();
        edges_.push_back({std::min(a, b), std::max(a, b)});
    }

    void remove_edge(VertexId a, VertexId b) {
        erase_one(adj_[a], b);
        erase_one(adj_[b], a);
        const auto it = index_.find(key(a, b));
        const std::size_t pos = it->second;
        index_.erase(it);
        if (pos + 1 != edges_.size()) {
            edges_[pos] = edges_.back();
            index_[key(edges_[pos].u, edges_[pos].v)] = pos;
        }
        edges_.pop_back();
    }

    /// True iff edge ab lies on a cycle of length < bound.
    bool on_short_cycle(VertexId a, VertexId b, std::size_t bound) {
        // BFS from a avoiding edge ab; b at depth <= bound-2 closes a short cycle.
        if (bound <= 3) return false;
        const std::size_t max_depth = bound - 2;
        ++epoch_;
        frontier_.assign(1, a);
        stamp_[a] = epoch_;
        for (std::size_t depth = 0; depth < max_depth && !frontier_.empty(); ++depth) {
            next_.clear();
            for (VertexId x : frontier_) {
                for (VertexId y : adj_[x]) {
                    if (x == a && y == b) continue;
                    if (y == b) return true;
                    if (stamp_[y] != epoch_) {
                        stamp_[y] = epoch_;
                        next_.push_back(y);
                    }
                }
            }
            frontier_.swap(next_);
        }
        return false;
    }

    Graph freeze() const { return to_graph(adj_); }

private:
    static std::uint64_t key(VertexId a, VertexId b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    Adjacency adj_;
    std::vector<Edge> edges_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
    std::vector<std::uint64_t> stamp_;
    std::uint64_t epoch_ = 0;
    std::vector<VertexId> frontier_;
    std::vector<VertexId> next_;
};

}  // namespace

Graph generate_random_regular(std::size_t n, std::size_t d, std::uint64_t seed, std::size_t max_restarts) {
    if ((n * d) % 2 != 0) throw InvalidArgument("n*d must be even for a d-regular graph");
    if (d > 0 && d >= n) throw InvalidArgument("degree must be smaller than the vertex count");
    Adjacency adj;
    for (std::size_t attempt = 0; attempt <= max_restarts; ++attempt) {
        KeyedStream rng(seed, {0x7265'6775ULL, attempt});
        if (try_pairing(n, d, rng, adj)) return to_graph(adj);
    }
    throw GenerationError("random regular pairing failed after " + std::to_string(max_restarts + 1) + " attempts");
}

Graph generate_high_girth_regular(std::size_t n, std::size_t d, std::size_t g_min, std::uint64_t seed,
                                  std::size_t max_steps) {
    if ((n * d) % 2 != 0) throw InvalidArgument("n*d must be even for a d-regular graph");
    if (g_min < 3) throw InvalidArgument("g_min must be at least 3");

    Girth best = Girth::finite(0);
    std::size_t steps = 0;
    for (std::uint64_t restart = 0;; ++restart) {
        MutableRegularGraph mg(generate_random_regular(n, d, derive_seed(seed, {restart, 0})));
        KeyedStream rng(seed, {restart, 1});

        std::vector<Edge> bad;
        for (const Edge& e : mg.edges())
            if (mg.on_short_cycle(e.u, e.v, g_min)) bad.push_back(e);

        const std::size_t stall_limit = 50 * std::max<std::size_t>(mg.edges().size(), 1);
        std::size_t stalled = 0;
        while (!bad.empty() && steps < max_steps && stalled < stall_limit) {
            const std::size_t pick = rng.below(bad.size());
            const Edge target = bad[pick];
            if (!mg.has_edge(target.u, target.v) || !mg.on_short_cycle(target.u, target.v, g_min)) {
                bad[pick] = bad.back();
                bad.pop_back();
                continue;
            }
            ++steps;
            ++stalled;
            const Edge partner = mg.edges()[rng.below(mg.edges().size())];
            VertexId u = target.u, v = target.v, x = partner.u, y = partner.v;
            if (rng.below(2) == 1) std::swap(x, y);
            if (x == u || x == v || y == u || y == v) continue;
            if (mg.has_edge(u, x) || mg.has_edge(v, y)) continue;

            mg.remove_edge(u, v);
            mg.remove_edge(x, y);
            mg.add_edge(u, x);
            mg.add_edge(v, y);
            if (mg.on_short_cycle(u, x, g_min) || mg.on_short_cycle(v, y, g_min)) {
                mg.remove_edge(u, x);
                mg.remove_edge(v, y);
                mg.add_edge(u, v);
                mg.add_edge(x, y);
                continue;
            }
            stalled = 0;
        }

        Graph out = mg.freeze();
        const Girth reached = girth(out);
        if (reached.at_least(g_min)) return out;
        if (reached.length() > best.length()) best = reached;
        if (steps >= max_steps) {
            throw GirthTargetError("girth " + std::to_string(g_min) + " not reached within " +
                                       std::to_string(max_steps) + " swap proposals; best girth " +
                                       std::to_string(best.length()),
                                   best);
        }
    }
}

Graph generate_bipartite_cayley(std::size_t n, std::size_t d, std::uint64_t seed) {
    if (n % 2 != 0) throw InvalidArgument("bipartite Cayley graph needs an even vertex count");
    const std::size_t half = n / 2;
    if (d > half) throw InvalidArgument("degree exceeds the side size");

    auto is_sidon_mod = [half](const std::vector<std::uint64_t>& set) {
        std::vector<char> seen(half, 0);
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = 0; j < set.size(); ++j) {
                if (i == j) continue;
                const auto diff = (set[i] + half - set[j]) % half;
                if (seen[diff]) return false;
                seen[diff] = 1;
            }
        return true;
    };

    // Mian-Chowla: greedily add the smallest integer keeping pairwise sums distinct.
    std::vector<std::uint64_t> sidon;
    {
        std::vector<std::uint64_t> sums;
        for (std::uint64_t candidate = 0; sidon.size() < d; ++candidate) {
            std::vector<std::uint64_t> fresh;
            bool ok = true;
            for (std::uint64_t a : sidon) {
                const auto s = a + candidate;
                if (std::binary_search(sums.begin(), sums.end(), s)) { ok = false; break; }
                fresh.push_back(s);
            }
            if (!ok || std::binary_search(sums.begin(), sums.end(), 2 * candidate)) continue;
            fresh.push_back(2 * candidate);
            sums.insert(sums.end(), fresh.begin(), fresh.end());
            std::sort(sums.begin(), sums.end());
            sidon.push_back(candidate);
        }
    }
    if (!is_sidon_mod(sidon)) {
        throw InvalidArgument("no Sidon set of size " + std::to_string(d) + " found modulo " + std::to_string(half) +
                              "; increase n");
    }

    KeyedStream rng(seed, {0x6361'796cULL});
    std::uint64_t unit = 1;
    if (half > 1) {
        do unit = 1 + rng.below(half - 1);
        while (std::gcd(unit, static_cast<std::uint64_t>(half)) != 1);
    }
    const std::uint64_t shift = half > 0 ? rng.below(half) : 0;
    for (auto& s : sidon) s = (s * unit + shift) % half;

    std::vector<VertexId> label(n);
    std::iota(label.begin(), label.end(), 0);
    shuffle_with(label, rng);

    Adjacency adj(n);
    for (std::uint64_t i = 0; i < half; ++i) {
        for (std::uint64_t s : sidon) {
            const VertexId a = label[i];
            const VertexId b = label[half + (i + s) % half];
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
    }
    return to_graph(adj);
}

Graph bipartite_double_cover(const Graph& g) {
    const auto n = static_cast<VertexId>(g.vertex_count());
    std::vector<Edge> edges;
    edges.reserve(2 * g.edge_count());
    for (const Edge& e : g.edges()) {
        edges.push_back({e.u, e.v + n});
        edges.push_back({e.v, e.u + n});
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    return Graph(2 * g.vertex_count(), std::move(edges));
}

}  // namespace aec
