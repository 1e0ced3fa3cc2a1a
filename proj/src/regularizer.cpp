#include "aec/regularizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "aec/generators.hpp"
#include "aec/rng.hpp"

namespace aec {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

// Side of each vertex in a 2-colouring, or empty if g is not bipartite.
std::vector<int> bipartition(const Graph& g) {
    std::vector<int> side(g.vertex_count(), -1);
    std::vector<VertexId> queue;
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        queue.assign(1, s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const VertexId x = queue[head];
            for (const Incidence& inc : g.incident(x)) {
                if (side[inc.neighbour] == -1) {
                    side[inc.neighbour] = 1 - side[x];
                    queue.push_back(inc.neighbour);
                } else if (side[inc.neighbour] == side[x]) {
                    return {};
                }
            }
        }
    }
    return side;
}

class HopcroftKarp {
public:
    // adj[l] lists (right index, edge id).
    HopcroftKarp(std::size_t left, std::size_t right, const std::vector<std::vector<std::pair<std::size_t, EdgeId>>>& adj)
        : adj_(adj), match_l_(left, kInf), match_r_(right, kInf), via_(left, 0), dist_(left) {}

    std::size_t run() {
        std::size_t size = 0;
        while (bfs())
            for (std::size_t l = 0; l < match_l_.size(); ++l)
                if (match_l_[l] == kInf && dfs(l)) ++size;
        return size;
    }
    EdgeId matched_edge(std::size_t l) const { return via_[l]; }
    bool matched(std::size_t l) const { return match_l_[l] != kInf; }

private:
    bool bfs() {
        std::vector<std::size_t> queue;
        bool found = false;
        for (std::size_t l = 0; l < match_l_.size(); ++l) {
            dist_[l] = match_l_[l] == kInf ? 0 : kInf;
            if (!dist_[l]) queue.push_back(l);
        }
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::size_t l = queue[head];
            for (const auto& [r, e] : adj_[l]) {
                const std::size_t next = match_r_[r];
                if (next == kInf) {
                    found = true;
                } else if (dist_[next] == kInf) {
                    dist_[next] = dist_[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        return found;
    }

    bool dfs(std::size_t l) {
        for (const auto& [r, e] : adj_[l]) {
            const std::size_t next = match_r_[r];
            if (next == kInf || (dist_[next] == dist_[l] + 1 && dfs(next))) {
                match_l_[l] = r;
                match_r_[r] = l;
                via_[l] = e;
                return true;
            }
        }
        dist_[l] = kInf;
        return false;
    }

    const std::vector<std::vector<std::pair<std::size_t, EdgeId>>>& adj_;
    std::vector<std::size_t> match_l_, match_r_;
    std::vector<EdgeId> via_;
    std::vector<std::size_t> dist_;
};

std::size_t int_pow(std::size_t base, std::size_t exp) {
    std::size_t out = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && out > kInf / base) return kInf;
        out *= base;
    }
    return out;
}

}  // namespace

PowerColouring power_colouring(const Graph& g, std::size_t r, const std::vector<std::uint8_t>* subset) {
    if (r < 1) throw InvalidArgument("power radius must be at least 1");
    const std::size_t n = g.vertex_count();
    if (subset && subset->size() != n) throw InvalidArgument("subset mask does not match the graph");
    auto in = [&](VertexId v) { return !subset || (*subset)[v]; };

    PowerColouring out;
    out.colour.assign(n, PowerColouring::kNoColour);
    std::vector<std::size_t> dist(n, kInf);
    std::vector<VertexId> queue;
    std::vector<std::uint8_t> taken;
    std::size_t max_power_degree = 0;
    for (VertexId v = 0; v < n; ++v) {
        if (!in(v)) continue;
        queue.assign(1, v);
        dist[v] = 0;
        std::size_t reach = 0;
        taken.assign(out.colours + 1, 0);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const VertexId x = queue[head];
            if (x != v && in(x)) {
                ++reach;
                if (out.colour[x] != PowerColouring::kNoColour) taken[out.colour[x]] = 1;
            }
            if (dist[x] == r) continue;
            for (const Incidence& inc : g.incident(x)) {
                if (dist[inc.neighbour] == kInf) {
                    dist[inc.neighbour] = dist[x] + 1;
                    queue.push_back(inc.neighbour);
                }
            }
        }
        for (VertexId x : queue) dist[x] = kInf;
        max_power_degree = std::max(max_power_degree, reach);
        const auto c = static_cast<std::uint32_t>(std::find(taken.begin(), taken.end(), 0) - taken.begin());
        out.colour[v] = c;
        out.colours = std::max<std::size_t>(out.colours, c + 1);
    }
    out.greedy_bound = max_power_degree + 1;
    out.within_power_bound = out.colours <= int_pow(g.max_degree(), r);
    return out;
}

PartialEdgeColouring bipartite_regular_edge_colouring(const Graph& h) {
    if (!h.is_regular()) throw InvalidArgument("graph is not regular");
    const std::vector<int> side = bipartition(h);
    if (side.empty() && h.vertex_count() > 0) throw InvalidArgument("graph is not bipartite");
    const std::size_t d = h.max_degree();
    PartialEdgeColouring out(h.edge_count(), d);
    if (d == 0) return out;

    std::vector<std::size_t> index(h.vertex_count());
    std::vector<VertexId> left;
    std::size_t right_count = 0;
    for (VertexId v = 0; v < h.vertex_count(); ++v) {
        if (side[v] == 0) {
            index[v] = left.size();
            left.push_back(v);
        } else {
            index[v] = right_count++;
        }
    }
    if (left.size() != right_count) throw InvalidArgument("regular bipartite graph has unequal sides");

    for (std::size_t colour = 0; colour < d; ++colour) {
        std::vector<std::vector<std::pair<std::size_t, EdgeId>>> adj(left.size());
        for (std::size_t l = 0; l < left.size(); ++l)
            for (const Incidence& inc : h.incident(left[l]))
                if (!out.is_coloured(inc.edge)) adj[l].push_back({index[inc.neighbour], inc.edge});
        HopcroftKarp hk(left.size(), right_count, adj);
        if (hk.run() != left.size()) throw Error("no perfect matching in a regular bipartite graph");
        for (std::size_t l = 0; l < left.size(); ++l) out.set(hk.matched_edge(l), static_cast<Colour>(colour));
    }
    // Every class must be a perfect matching.
    for (VertexId v = 0; v < h.vertex_count(); ++v) {
        std::vector<std::uint8_t> seen(d, 0);
        for (const Incidence& inc : h.incident(v)) seen[out.colour(inc.edge)] = 1;
        if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw Error("colour class is not a perfect matching");
    }
    return out;
}

Graph embed_step(const Graph& g, std::size_t girth_target, const Graph& h, std::uint64_t seed) {
    if (girth_target < 3) throw InvalidArgument("girth target must be at least 3");
    const std::size_t n = g.vertex_count();
    const std::size_t delta = g.max_degree();
    std::vector<std::uint8_t> deficient(n, 0);
    for (VertexId v = 0; v < n; ++v) deficient[v] = g.degree(v) < delta;

    const PowerColouring f = power_colouring(g, girth_target, &deficient);
    const PartialEdgeColouring classes = bipartite_regular_edge_colouring(h);
    const std::size_t D = h.max_degree();
    if (D < f.colours) {
        throw InvalidArgument("host degree " + std::to_string(D) + " is below the " + std::to_string(f.colours) +
                              " colours needed");
    }
    std::vector<std::size_t> pi(D);
    std::iota(pi.begin(), pi.end(), 0);
    KeyedStream rng(seed, {0x656d'6264ULL});
    shuffle_with(pi, rng);

    std::vector<std::vector<EdgeId>> by_class(D);
    for (EdgeId e = 0; e < h.edge_count(); ++e) by_class[classes.colour(e)].push_back(e);

    std::vector<Edge> edges;
    for (VertexId x = 0; x < h.vertex_count(); ++x)
        for (const Edge& e : g.edges()) edges.push_back({x * static_cast<VertexId>(n) + e.u, x * static_cast<VertexId>(n) + e.v});
    for (VertexId v = 0; v < n; ++v) {
        if (!deficient[v]) continue;
        for (EdgeId he : by_class[pi[f.colour[v]]]) {
            const Edge& xy = h.edge(he);
            edges.push_back({xy.u * static_cast<VertexId>(n) + v, xy.v * static_cast<VertexId>(n) + v});
        }
    }
    Graph out(n * h.vertex_count(), std::move(edges));

    if (out.max_degree() != delta) throw GenerationError("embedding changed the maximum degree");
    const std::size_t want_min = g.min_degree() + (g.min_degree() < delta ? 1 : 0);
    if (out.vertex_count() > 0 && out.min_degree() != want_min)
        throw GenerationError("embedding did not raise the minimum degree by one");
    const Girth before = girth(g);
    const std::size_t need = before.is_finite() ? std::min(before.length(), girth_target) : girth_target;
    if (!girth(out).at_least(need)) throw GenerationError("embedding created a cycle shorter than " + std::to_string(need));
    return out;
}

double host_size_estimate(std::size_t D, std::size_t girth_target) {
    return 2.0 * std::pow(static_cast<double>(D > 0 ? D - 1 : 0), static_cast<double>(girth_target - 1));
}

Graph build_matching_host(std::size_t D, std::size_t girth_target, std::uint64_t seed) {
    if (D == 0) throw InvalidArgument("host degree must be positive");
    if (girth_target <= 6) {
        // Smallest cyclic group in which the Sidon set stays Sidon.
        for (std::size_t half = std::max<std::size_t>(D, 1);; ++half) {
            try {
                return generate_bipartite_cayley(2 * half, D, seed);
            } catch (const InvalidArgument&) {
                continue;
            }
        }
    }
    std::size_t n = std::max<std::size_t>(D + 1, static_cast<std::size_t>(host_size_estimate(D, girth_target) / 2));
    if ((n * D) % 2) ++n;
    for (;; n *= 2) {
        try {
            return bipartite_double_cover(generate_high_girth_regular(n, D, girth_target, seed, 200 * n * D));
        } catch (const GirthTargetError&) {
            continue;
        }
    }
}

EmbedResult embed_regular(const Graph& g, std::size_t girth_target, std::uint64_t seed, std::size_t budget) {
    EmbedResult out;
    out.graph = g;
    out.copy0.resize(g.vertex_count());
    std::iota(out.copy0.begin(), out.copy0.end(), 0);
    while (out.graph.vertex_count() > 0 && !out.graph.is_regular()) {
        const Graph& cur = out.graph;
        std::vector<std::uint8_t> deficient(cur.vertex_count(), 0);
        for (VertexId v = 0; v < cur.vertex_count(); ++v) deficient[v] = cur.degree(v) < cur.max_degree();
        const std::size_t D = std::max<std::size_t>(power_colouring(cur, girth_target, &deficient).colours, 1);
        if (girth_target > 6) {
            const double estimate = static_cast<double>(cur.vertex_count()) * host_size_estimate(D, girth_target);
            if (estimate > static_cast<double>(budget)) {
                throw InvalidArgument("embedding size estimate " + std::to_string(static_cast<long double>(estimate)) +
                                      " vertices is above the budget of " + std::to_string(budget));
            }
        }
        const Graph h = build_matching_host(D, girth_target, derive_seed(seed, {out.steps, 0}));
        const std::size_t size = cur.vertex_count() * h.vertex_count();
        if (size > budget) {
            throw InvalidArgument("embedding needs " + std::to_string(size) + " vertices, above the budget of " +
                                  std::to_string(budget));
        }
        out.graph = embed_step(cur, girth_target, h, derive_seed(seed, {out.steps, 1}));
        ++out.steps;
    }
    return out;
}

}  // namespace aec
