#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aec/colouring.hpp"
#include "aec/graph.hpp"

namespace aec {

struct PowerColouring {
    std::vector<std::uint32_t> colour;  // per vertex; vertices outside the subset get kNoColour
    std::size_t colours = 0;
    std::size_t greedy_bound = 0;       // 1 + max degree of the r-th power
    bool within_power_bound = false;    // colours <= Delta^r

    static constexpr std::uint32_t kNoColour = static_cast<std::uint32_t>(-1);
};

/// Greedy proper colouring of the r-th power of g (vertices at distance
/// <= r are adjacent), in vertex order. With a subset mask only the marked
/// vertices are coloured and only conflicts among them count.
PowerColouring power_colouring(const Graph& g, std::size_t r, const std::vector<std::uint8_t>* subset = nullptr);

/// Splits a d-regular bipartite graph into d perfect matchings, one colour
/// each, by repeated Hopcroft-Karp. Throws InvalidArgument if h is not
/// bipartite or not regular.
PartialEdgeColouring bipartite_regular_edge_colouring(const Graph& h);

/// One embedding step. The output has |V(h)| copies of g, vertex x*n + v
/// being v in copy x. Each vertex v of degree below Delta gets power colour
/// j(v); for every edge xy of h in matching class pi(j(v)) the copies x and y
/// of v are joined. pi is a random permutation of h's classes drawn from
/// seed. Vertex colours are a power colouring of the deficient vertices with
/// radius girth_target. Max degree, min degree + 1 and girth are checked on
/// the output; a failed check throws GenerationError. Throws InvalidArgument
/// when h's degree is below the number of colours needed.
Graph embed_step(const Graph& g, std::size_t girth_target, const Graph& h, std::uint64_t seed);

/// Bipartite regular graph of degree D and girth >= girth_target, used as H.
/// A Sidon Cayley graph when girth_target <= 6, otherwise the double cover of
/// a high-girth regular graph.
Graph build_matching_host(std::size_t D, std::size_t girth_target, std::uint64_t seed);

/// Vertex count estimate for a host of degree D and girth g: 2 (D-1)^(g-1).
double host_size_estimate(std::size_t D, std::size_t girth_target);

struct EmbedResult {
    Graph graph;
    std::vector<VertexId> copy0;  // original vertex v -> its vertex in the output
    std::size_t steps = 0;
};

/// Repeats embed_step until the graph is Delta-regular. Throws
/// InvalidArgument when a step's output would exceed budget vertices; the
/// message carries the estimate.
EmbedResult embed_regular(const Graph& g, std::size_t girth_target, std::uint64_t seed,
                          std::size_t budget = 1'000'000);

}  // namespace aec
