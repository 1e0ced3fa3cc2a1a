#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "aec/colouring.hpp"
#include "aec/cycles.hpp"
#include "aec/graph.hpp"
#include "aec/reservation.hpp"
#include "aec/schedule.hpp"

namespace aec {

/// Snapshot at the start of iteration `iteration` (1-based): the partial
/// colouring, the list of every uncoloured edge, and the counts
///   t(v,c) = #{uncoloured e at v : c in list(e)}
///   r(v,c) = #{u in N(v) : uv uncoloured, c in S_u}
/// kept in step with the lists.
class NibbleState {
public:
    NibbleState(const Graph& g, const ReservedSets& reserved, const ScheduleParams& schedule,
                std::shared_ptr<const CycleRegistry> registry = nullptr);

    const Graph& graph() const noexcept { return *g_; }
    const ReservedSets& reserved() const noexcept { return *reserved_; }
    const ScheduleParams& schedule() const noexcept { return *schedule_; }
    const CycleRegistry* registry() const noexcept { return registry_.get(); }
    std::size_t palette_size() const noexcept { return palette_; }

    std::size_t iteration() const noexcept { return iteration_; }
    const PartialEdgeColouring& colouring() const noexcept { return chi_; }
    const std::vector<Colour>& list(EdgeId e) const { return lists_.at(e); }
    bool in_list(EdgeId e, Colour c) const;
    std::size_t t(VertexId v, Colour c) const noexcept { return t_[v * palette_ + c]; }
    std::size_t r(VertexId v, Colour c) const noexcept { return r_[v * palette_ + c]; }

    /// List size every list is cut to at the start of the current iteration:
    /// floor(L_i), or 0 when L_i < 0.
    std::size_t list_target() const;

    /// Replaces the list of an uncoloured edge (for synthetic states and
    /// tests). Keeps t in step.
    void set_list(EdgeId e, std::vector<Colour> colours);

    /// Recomputes t and r from the lists; true iff they equal the
    /// incrementally maintained values.
    bool recount_matches() const;

    // Mutation used by the iteration steps.
    void truncate_lists();
    void colour_edge(EdgeId e, Colour c);
    void remove_from_list(EdgeId e, Colour c);
    void advance() noexcept { ++iteration_; }

private:
    const Graph* g_;
    const ReservedSets* reserved_;
    const ScheduleParams* schedule_;
    std::shared_ptr<const CycleRegistry> registry_;
    std::size_t palette_;
    std::size_t iteration_ = 1;
    PartialEdgeColouring chi_;
    std::vector<std::vector<Colour>> lists_;
    std::vector<std::uint32_t> t_;
    std::vector<std::uint32_t> r_;
};

/// L_1(e) = palette minus (S_u ∪ S_v) for every edge. Throws InvalidArgument
/// when g's girth is below schedule.girth.
NibbleState init_state(const Graph& g, const ReservedSets& reserved, const ScheduleParams& schedule,
                       std::shared_ptr<const CycleRegistry> registry = nullptr);
// The state keeps references; temporaries would dangle.
NibbleState init_state(const Graph&&, const ReservedSets&, const ScheduleParams&,
                       std::shared_ptr<const CycleRegistry> = nullptr) = delete;
NibbleState init_state(const Graph&, const ReservedSets&&, const ScheduleParams&,
                       std::shared_ptr<const CycleRegistry> = nullptr) = delete;
NibbleState init_state(const Graph&, const ReservedSets&, const ScheduleParams&&,
                       std::shared_ptr<const CycleRegistry> = nullptr) = delete;

/// (1 - 1/L)^(t(u,c) + t(v,c) - 2), with L the current list target.
double p_keep(const NibbleState& state, EdgeId e, Colour c);
/// 1 - t(v,c) / (e^2 L), with L the current list target.
double q_keep(const NibbleState& state, VertexId v, Colour c);

/// Assignment, conflicts and equalizing coins of one iteration, before the
/// state is touched.
struct AssignmentOutcome {
    std::vector<Colour> assigned;       // colour drawn, kUncoloured if none
    std::vector<std::uint8_t> conflict; // lost to an adjacent edge with the same colour
    std::vector<std::uint8_t> retained; // survived the conflict and the coin
    std::size_t assigned_count = 0;
    std::size_t conflict_count = 0;
    std::size_t equalized_count = 0;    // uncoloured by the equalizing coin
    std::size_t retained_count = 0;
    std::size_t eq_clamped = 0;         // P < e^-2, coin probability clamped to 0
};

/// Draws on a state whose lists are already truncated. Randomness per
/// edge comes from the stream keyed (seed, iteration, edge).
AssignmentOutcome draw_assignment(const NibbleState& state, std::uint64_t seed);

struct IterationStats {
    std::size_t iteration = 0;
    std::size_t attempt = 0;
    std::size_t uncoloured_before = 0;
    std::size_t list_target = 0;
    std::size_t assigned = 0;
    std::size_t conflicts = 0;
    std::size_t equalized = 0;
    std::size_t retained = 0;
    std::size_t uncoloured_after = 0;
    std::size_t retained_removals = 0;  // (v,c) removed because c was retained at v
    std::size_t coin_removals = 0;      // (v,c) removed by the vertex coin
    std::size_t eq_clamped = 0;
    std::size_t vq_clamped = 0;
    double mean_list = 0.0;             // mean l_{i+1}(e) over uncoloured edges
    std::size_t min_list = 0;
    std::size_t max_t = 0;
    std::size_t max_r = 0;
};

/// Runs the whole current iteration and advances the iteration counter.
/// Vertex-colour coins use streams keyed
/// (seed, iteration, vertex, colour).
IterationStats run_iteration(NibbleState& state, std::uint64_t seed);

/// Result of testing one colour pair against a cycle.
struct PairRecord {
    Colour c;
    Colour d;
    bool compatible;
    std::size_t multiplicity;   // 0 when incompatible
    std::size_t reserved_count; // uncoloured edges that are c- or d-reserved
    std::size_t free_count;     // uncoloured edges that are c- or d-free (lambda)
    bool significant;           // compatible, multiplicity <= Psi_i, reserved_count <= Psi_i
    bool bicoloured;            // every edge already coloured with c or d
};

/// Candidate pairs for a cycle (given by its edges) at the state's current
/// iteration. Pairs are restricted by the colours already on the cycle; only
/// compatible pairs are returned, sorted by (c, d).
std::vector<PairRecord> significant_pairs(const std::vector<EdgeId>& cycle, const NibbleState& state);

/// Evaluates one pair directly, compatible or not.
PairRecord evaluate_pair(const std::vector<EdgeId>& cycle, const NibbleState& state, Colour c, Colour d);

struct PropertyReport {
    std::size_t index = 0;  // checks P(index): thresholds L_{index+1}, ...
    std::vector<EdgeId> short_lists;                           // list below L
    std::vector<std::pair<VertexId, Colour>> crowded_lists;    // t above T
    std::vector<std::pair<VertexId, Colour>> crowded_reserved; // r above R
    struct CycleViolation {
        std::size_t cycle;
        Colour c;
        Colour d;
        std::size_t free_count;
    };
    std::vector<CycleViolation> thin_cycles;                   // fewer free edges than Lambda
    bool cycles_checked = false;  // false without a registry
    bool cycles_vacuous = false;  // Lambda <= 0, so the cycle bound holds trivially

    bool ok() const noexcept {
        return short_lists.empty() && crowded_lists.empty() && crowded_reserved.empty() && thin_cycles.empty();
    }
};

/// P(i-1) for a state at the start of iteration i.
PropertyReport check_properties(const NibbleState& state);

struct FinalReport {
    std::vector<EdgeId> provenance;                        // colour taken from S_u or S_v
    std::vector<std::pair<VertexId, Colour>> crowded;      // too many reserved holders left
    std::vector<std::size_t> short_bicolourable;           // registry cycles bicolourable with < 3 open edges
    bool cycles_checked = false;

    bool ok() const noexcept { return provenance.empty() && crowded.empty() && short_bicolourable.empty(); }
};

/// Provenance, leftover crowding and short bicolourable cycles on the
/// state's colouring; the cycle check covers the registry only.
FinalReport check_final_properties(const NibbleState& state);

struct NibblePolicy {
    std::size_t max_restarts = 10;  // extra attempts per iteration
    /// When false, property violations are recorded but do not trigger
    /// restarts or failure; properness and acyclicity are always enforced.
    bool enforce_properties = true;
};

struct NibbleResult {
    bool success = false;
    std::string failure;                     // empty on success
    PartialEdgeColouring colouring;
    std::vector<IterationStats> trace;
    std::vector<PropertyReport> properties;  // P(0), then one per completed iteration
    FinalReport final_report;
    std::shared_ptr<NibbleState> state;      // state after the last iteration
};

/// Runs iterations 1..i* from a fresh state. After each iteration the partial
/// colouring must be proper and free of bicoloured cycles, and (when enforced)
/// P(i) must hold; otherwise the iteration is rerun from its starting state
/// with a new derived seed.
NibbleResult run_nibble(const Graph& g, const ReservedSets& reserved, const ScheduleParams& schedule,
                        std::uint64_t seed, const NibblePolicy& policy = {},
                        std::shared_ptr<const CycleRegistry> registry = nullptr);

/// One JSON object per line, one line per iteration.
std::string trace_to_jsonl(const std::vector<IterationStats>& trace);

}  // namespace aec
