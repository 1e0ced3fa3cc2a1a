#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "aec/types.hpp"

namespace aec {

struct Edge {
    VertexId u;
    VertexId v;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// One entry of an adjacency list: the neighbour and the id of the joining edge.
struct Incidence {
    VertexId neighbour;
    EdgeId edge;
};

/// Immutable simple undirected graph.
///
/// Vertices are 0..n-1. Edges are stored with u < v and keep the id given by
/// their position in the constructor's edge list. Adjacency lists are sorted by
/// neighbour.
class Graph {
public:
    Graph() = default;

    /// Throws InvalidArgument on self-loops, duplicate edges or out-of-range
    /// endpoints. Endpoints are normalised to u < v; order is preserved.
    Graph(std::size_t vertex_count, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const Edge& edge(EdgeId e) const { return edges_.at(e); }

    std::span<const Incidence> incident(VertexId v) const noexcept {
        return {incidences_.data() + offsets_[v], incidences_.data() + offsets_[v + 1]};
    }

    std::size_t degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    std::size_t max_degree() const noexcept { return max_degree_; }
    std::size_t min_degree() const noexcept { return min_degree_; }
    bool is_regular() const noexcept { return max_degree_ == min_degree_; }

    /// Id of edge uv, if present.
    std::optional<EdgeId> find_edge(VertexId u, VertexId v) const noexcept;

    /// The endpoint of e that is not `from`.
    VertexId other(EdgeId e, VertexId from) const noexcept {
        const Edge& ed = edges_[e];
        return ed.u == from ? ed.v : ed.u;
    }

    /// True iff the two edges are distinct and share an endpoint.
    bool adjacent(EdgeId a, EdgeId b) const noexcept;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.vertex_count() == b.vertex_count() && a.edges_ == b.edges_;
    }

private:
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Incidence> incidences_;
    std::size_t max_degree_ = 0;
    std::size_t min_degree_ = 0;
};

/// Length of a shortest cycle, or unbounded for forests.
class Girth {
public:
    static constexpr Girth unbounded() noexcept { return Girth{}; }
    static constexpr Girth finite(std::size_t length) noexcept { return Girth{length}; }

    constexpr bool is_finite() const noexcept { return length_.has_value(); }
    constexpr bool is_unbounded() const noexcept { return !length_.has_value(); }
    /// Throws std::bad_optional_access when unbounded.
    constexpr std::size_t length() const { return length_.value(); }

    /// True iff every cycle has length >= bound (vacuous for forests).
    constexpr bool at_least(std::size_t bound) const noexcept { return !length_ || *length_ >= bound; }

    friend constexpr bool operator==(const Girth&, const Girth&) = default;

private:
    constexpr Girth() = default;
    constexpr explicit Girth(std::size_t length) : length_(length) {}
    std::optional<std::size_t> length_;
};

/// Shortest cycle length via BFS from every vertex, pruned by the best cycle
/// found so far.
Girth girth(const Graph& g);

/// A shortest cycle as a closed vertex sequence (first vertex not repeated),
/// or empty for forests.
std::vector<VertexId> shortest_cycle(const Graph& g);

/// True iff g has a cycle of length < bound. Bounded BFS only, so it is cheap
/// on large sparse graphs when bound is small.
bool has_cycle_shorter_than(const Graph& g, std::size_t bound);

/// Distance from source to every vertex within max_depth (others: SIZE_MAX).
std::vector<std::size_t> bfs_distances(const Graph& g, VertexId source, std::size_t max_depth);

}  // namespace aec
