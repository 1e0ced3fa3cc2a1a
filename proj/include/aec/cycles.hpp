#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "aec/graph.hpp"

namespace aec {

/// Compatibility of one cycle edge with a colour pair {c, d}.
enum class PairLabel : std::uint8_t { COnly, DOnly, Both, None };

/// Minimum number of arcs, each (c,d)- or (d,c)-alternating, that partition
/// the cycle; nullopt when some edge is labelled None (incompatible). The
/// cycle is given as its cyclic edge-label sequence, length >= 3. A single
/// arc may wrap all the way round.
std::optional<std::size_t> cycle_multiplicity(const std::vector<PairLabel>& labels);

/// True iff the labels, read in order, can alternate starting with either colour.
bool is_alternating_arc(const PairLabel* first, std::size_t length);

/// All simple cycles of length <= l_max. Each cycle starts at its smallest
/// vertex and runs in the direction whose second vertex is smaller than the
/// last, so every cycle appears once.
struct CycleRegistry {
    std::size_t l_max = 0;
    std::vector<std::vector<VertexId>> vertices;
    std::vector<std::vector<EdgeId>> edges;  // edges[k][j] joins vertices[k][j] and vertices[k][j+1]

    std::size_t size() const noexcept { return edges.size(); }
    bool empty() const noexcept { return edges.empty(); }
};

inline constexpr std::size_t kDefaultRegistryCap = 1'000'000;

/// Depth-first enumeration with smallest-vertex pruning. Throws
/// GenerationError once more than cap cycles are found.
CycleRegistry build_cycle_registry(const Graph& g, std::size_t l_max, std::size_t cap = kDefaultRegistryCap);

}  // namespace aec
