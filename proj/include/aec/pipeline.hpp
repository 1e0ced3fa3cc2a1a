#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "aec/baselines.hpp"
#include "aec/colouring.hpp"
#include "aec/finisher.hpp"
#include "aec/graph.hpp"
#include "aec/nibble.hpp"
#include "aec/reservation.hpp"
#include "aec/schedule.hpp"

namespace aec {

enum class PipelineMode {
    /// Every property is enforced; the finishing phase runs only on lists of
    /// shared reserved colours satisfying its hypotheses.
    Strict,
    /// Properties are recorded but not enforced (properness and acyclicity
    /// still are). The leftover edges are finished by repair_extend over the
    /// whole palette, with the nibble colours protected.
    Relaxed,
};

struct PipelineOptions {
    PipelineMode mode = PipelineMode::Strict;
    std::size_t l_max = 0;                 // registry cycle length; 0 means 2 * girth
    bool use_registry = true;
    std::size_t registry_cap = kDefaultRegistryCap;
    std::size_t restarts = 10;             // per nibble iteration
    std::size_t reservation_rounds = 1000;
    std::size_t finish_rounds = 10000;
    std::optional<std::size_t> iterations; // imposed i*; otherwise derived, or desk_iterations when it does not exist
};

struct PipelineResult {
    bool success = false;
    std::string stage;    // last stage reached: schedule, reservation, registry, nibble, finish, done
    std::string failure;
    std::size_t palette_size = 0;
    ScheduleParams schedule;
    ReservedSets reserved;
    std::size_t reservation_rounds = 0;
    bool reservation_fallback = false;  // relaxed mode ran with empty reserved sets
    bool registry_skipped = false;      // relaxed mode ran without a registry (cap exceeded)
    NibbleResult nibble;           // without the state pointer
    FinishingReport finishing;
    CompletionResult completion;   // strict finishing
    RepairResult repair;           // relaxed finishing
    PartialEdgeColouring colouring;
};

/// Number of iterations used when the stopping rule has no solution: the
/// largest i with floor(L_{i+1}) >= 1, at least 1.
std::size_t desk_iterations(double eps, std::size_t delta, std::size_t girth);

/// Reservation, nibble and finishing on g with ceil((1+eps)Delta) colours.
/// On success the colouring is total, proper and free of bicoloured cycles
/// per the full verifier.
PipelineResult run_pipeline(const Graph& g, double eps, std::uint64_t seed, const PipelineOptions& options = {});

}  // namespace aec
