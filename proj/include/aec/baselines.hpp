#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "aec/colouring.hpp"
#include "aec/graph.hpp"

namespace aec {

struct RepairResult {
    bool success = false;
    std::string failure;
    PartialEdgeColouring colouring;
    std::size_t steps = 0;        // colour attempts
    std::size_t recolourings = 0; // steps that uncoloured edges
};

/// Random colouring with local repair over K colours. Each step colours a
/// random uncoloured edge with a random colour absent from its adjacent
/// edges. If that closes a bicoloured cycle, the edge and the unprotected
/// edges of the shorter side of the cycle are uncoloured again. An edge with
/// no available colour frees one random unprotected neighbour. Success means
/// a total colouring that passes the full verifier.
RepairResult repair_colour(const Graph& g, std::size_t K, std::uint64_t seed, std::size_t max_steps);

/// Same procedure starting from a partial colouring whose coloured edges are
/// never uncoloured. The start must be proper and acyclic.
RepairResult repair_extend(const Graph& g, std::size_t K, const PartialEdgeColouring& start, std::uint64_t seed,
                           std::size_t max_steps);

struct CompareRow {
    std::string algo;
    std::size_t n, d, girth;
    double eps_or_K;
    std::uint64_t seed;
    std::size_t colours_used;
    bool success;
    std::size_t rounds;
    double millis;
};

/// Runs repair_colour with K = ceil((1+eps)Delta) and the relaxed pipeline
/// on g for every seed; rows sorted by (seed, algo). With timing off the
/// millis column is 0 so the output is reproducible byte for byte.
std::vector<CompareRow> compare(const Graph& g, double eps, const std::vector<std::uint64_t>& seeds, bool timing = true);

std::string compare_header();
std::string compare_to_csv(const std::vector<CompareRow>& rows, bool header = true);

}  // namespace aec
