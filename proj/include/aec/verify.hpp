#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "aec/colouring.hpp"
#include "aec/graph.hpp"

namespace aec {

/// Raised by find_bicoloured_cycles when the colouring is not proper.
class NotProperError : public Error {
public:
    NotProperError(const std::string& what, std::vector<std::pair<EdgeId, EdgeId>> violations)
        : Error(what), violations_(std::move(violations)) {}
    const std::vector<std::pair<EdgeId, EdgeId>>& violations() const noexcept { return violations_; }

private:
    std::vector<std::pair<EdgeId, EdgeId>> violations_;
};

/// Pairs (a, b), a < b, of adjacent coloured edges with equal colours, sorted.
/// Throws InvalidArgument when chi does not match g's edge count.
std::vector<std::pair<EdgeId, EdgeId>> properness_violations(const Graph& g, const PartialEdgeColouring& chi);

/// A cycle using only colours c < d. vertices is in canonical form (the
/// lexicographically smallest rotation or reflection); edges[i] joins
/// vertices[i] and vertices[i+1] (cyclically).
struct BicolouredCycle {
    Colour c;
    Colour d;
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;

    friend bool operator==(const BicolouredCycle&, const BicolouredCycle&) = default;
};

/// Rotates/reflects a closed vertex sequence to its lexicographically
/// smallest form.
std::vector<VertexId> canonical_cycle(const std::vector<VertexId>& cycle);

/// Every cycle whose edges all carry one of two colours, sorted by (c, d,
/// vertices). Uncoloured edges are ignored. Only colour pairs that meet at a
/// vertex are scanned. Throws NotProperError if chi is not proper.
std::vector<BicolouredCycle> find_bicoloured_cycles(const Graph& g, const PartialEdgeColouring& chi);

/// Proper and free of bicoloured cycles (on the coloured support).
bool is_acyclic(const Graph& g, const PartialEdgeColouring& chi);

/// Smallest k <= max_colours admitting a total acyclic edge colouring, by
/// backtracking. nullopt when none exists within max_colours. Throws
/// InvalidArgument when the graph has more than edge_guard edges.
std::optional<std::size_t> brute_force_acyclic_index(const Graph& g, std::size_t max_colours,
                                                     std::size_t edge_guard = 12);

}  // namespace aec
