#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "aec/graph.hpp"

namespace aec {

/// Raised when the girth-raising search gives up. Carries the largest girth
/// it reached.
class GirthTargetError : public GenerationError {
public:
    GirthTargetError(const std::string& what, Girth best) : GenerationError(what), best_(best) {}
    Girth best_girth() const noexcept { return best_; }

private:
    Girth best_;
};

/// Uniform-ish simple d-regular graph on n vertices. Stubs are paired one at a
/// time, rejecting pairs that would create a loop or a multi-edge; a dead end
/// restarts the pairing. Edge ids follow lexicographic (u, v) order.
Graph generate_random_regular(std::size_t n, std::size_t d, std::uint64_t seed, std::size_t max_restarts = 1000);

/// d-regular graph of girth >= g_min. Starts from generate_random_regular and
/// applies double-edge swaps to edges lying on cycles shorter than g_min; a
/// swap is kept only when neither new edge closes a short cycle, so the number
/// of short cycles never grows. Restarts from a fresh sample when stuck.
/// max_steps bounds the total number of proposed swaps.
Graph generate_high_girth_regular(std::size_t n, std::size_t d, std::size_t g_min, std::uint64_t seed,
                                  std::size_t max_steps);

/// Bipartite Cayley graph on Z_{n/2} x {0,1}: left i joins right i+s for s in
/// a Sidon set of size d, so there are no 4-cycles and girth >= 6. The Sidon
/// set is a random affine image of the Mian-Chowla sequence; vertex labels
/// are randomly permuted.
Graph generate_bipartite_cayley(std::size_t n, std::size_t d, std::uint64_t seed);

/// Bipartite double cover: vertices v and v+n, each edge uv becomes
/// u-(v+n) and v-(u+n). Preserves degrees and never shortens the girth.
Graph bipartite_double_cover(const Graph& g);

}  // namespace aec
