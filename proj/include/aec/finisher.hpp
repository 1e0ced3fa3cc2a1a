#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "aec/colouring.hpp"
#include "aec/cycles.hpp"
#include "aec/graph.hpp"
#include "aec/reservation.hpp"

namespace aec {

/// Lists of the edges left uncoloured, keyed by edge id.
using FinalLists = std::map<EdgeId, std::vector<Colour>>;

/// eps^2 / 18.
double finishing_gamma(double eps);

/// floor(gamma * Delta), with a small relative tolerance so that products
/// which are integers in exact arithmetic are not rounded down.
std::size_t final_list_size(double gamma, std::size_t delta);

/// Gives each uncoloured edge uv the floor(gamma Delta) smallest colours of
/// S_u ∩ S_v. Throws InvalidArgument naming the first edge whose
/// intersection is too small.
FinalLists build_final_lists(const Graph& g, const PartialEdgeColouring& chi, const ReservedSets& reserved,
                             double gamma);

struct FinishingReport {
    struct Crowding {
        EdgeId edge;
        Colour c;
        std::size_t count;  // uncoloured neighbours of edge whose list holds c
    };
    std::vector<EdgeId> wrong_size;         // list size differs from floor(gamma Delta)
    std::vector<Crowding> crowded;          // count above gamma^2 Delta / 128
    std::size_t palette_used = 0;           // |colours of chi ∪ all lists|
    bool palette_exceeded = false;
    std::vector<std::size_t> short_cycles;  // registry cycles bicolourable with < 3 uncoloured edges
    bool cycles_checked = false;

    bool ok() const noexcept {
        return wrong_size.empty() && crowded.empty() && !palette_exceeded && short_cycles.empty();
    }
};

/// Checks the four hypotheses under which the lists can be completed: exact
/// list size, per-colour crowding among adjacent uncoloured edges, palette
/// size, and at least three uncoloured edges on every cycle of the registry
/// that could end up bicoloured. registry may be null.
FinishingReport check_finishing_hypotheses(const Graph& g, const PartialEdgeColouring& chi, const FinalLists& lists,
                                           double gamma, std::size_t palette_size,
                                           const CycleRegistry* registry = nullptr);

struct CompletionResult {
    bool success = false;
    std::string failure;
    PartialEdgeColouring colouring;
    std::size_t rounds = 0;            // resampling rounds after the initial draw
    std::size_t redraws = 0;           // total edge redraws
    std::vector<EdgeId> residual;      // edges of violated events at give-up
};

/// Draws a colour uniformly from each list, then repeatedly redraws the
/// listed edges involved in a violated event: two adjacent edges with the
/// same colour, or a bicoloured cycle. Edges coloured on entry are never
/// changed. Success is confirmed by the full verifier. Deterministic per seed.
CompletionResult complete_colouring(const Graph& g, const PartialEdgeColouring& chi, const FinalLists& lists,
                                    std::uint64_t seed, std::size_t max_rounds);

}  // namespace aec
