#include "aec/pipeline.hpp"

#include <cmath>

#include "aec/rng.hpp"
#include "aec/verify.hpp"

namespace aec {

std::size_t desk_iterations(double eps, std::size_t delta, std::size_t girth) {
    std::size_t best = 1;
    const ScheduleParams probe = compute_schedule_with_iterations(eps, delta, girth, kScheduleGuard - 1);
    for (std::size_t i = 1; i + 1 <= probe.iterations(); ++i) {
        if (std::floor(probe.L_at(i + 1)) < 1.0) break;
        best = i;
    }
    return best;
}

PipelineResult run_pipeline(const Graph& g, double eps, std::uint64_t seed, const PipelineOptions& options) {
    PipelineResult out;
    const std::size_t delta = g.max_degree();
    out.palette_size = palette_size_for(eps, delta);
    out.colouring = PartialEdgeColouring(g.edge_count(), out.palette_size);
    const Girth gr = girth(g);
    // A forest has no cycle to protect; any girth value above the registry's reach works.
    const std::size_t girth_value = gr.is_finite() ? gr.length() : std::max<std::size_t>(g.vertex_count() + 1, 3);

    out.stage = "schedule";
    try {
        if (options.iterations) {
            out.schedule = compute_schedule_with_iterations(eps, delta, girth_value, *options.iterations);
        } else {
            try {
                out.schedule = compute_schedule(eps, delta, girth_value);
            } catch (const ScheduleError&) {
                out.schedule = compute_schedule_with_iterations(eps, delta, girth_value,
                                                                desk_iterations(eps, delta, girth_value));
            }
        }
    } catch (const Error& err) {
        out.failure = err.what();
        return out;
    }

    out.stage = "reservation";
    try {
        ResampleResult res = resample_until_valid(g, eps, derive_seed(seed, {1}), options.reservation_rounds);
        out.reserved = std::move(res.sets);
        out.reservation_rounds = res.rounds;
    } catch (const ReservationFailure& err) {
        out.reservation_rounds = err.rounds();
        if (options.mode == PipelineMode::Strict) {
            out.failure = err.what();
            return out;
        }
        // Relaxed mode finishes over the whole palette, so it can run without reserved colours.
        out.reserved = ReservedSets(g.vertex_count(), out.palette_size, eps);
        out.reservation_fallback = true;
    }

    std::shared_ptr<const CycleRegistry> registry;
    if (options.use_registry) {
        out.stage = "registry";
        const std::size_t l_max = options.l_max ? options.l_max : 2 * girth_value;
        try {
            registry = std::make_shared<CycleRegistry>(build_cycle_registry(g, l_max, options.registry_cap));
        } catch (const GenerationError& err) {
            if (options.mode == PipelineMode::Strict) {
                out.failure = err.what();
                return out;
            }
            out.registry_skipped = true;
        }
    }

    out.stage = "nibble";
    NibblePolicy policy;
    policy.max_restarts = options.restarts;
    policy.enforce_properties = options.mode == PipelineMode::Strict;
    out.nibble = run_nibble(g, out.reserved, out.schedule, derive_seed(seed, {2}), policy, registry);
    out.nibble.state.reset();  // refers to out.reserved and out.schedule, which move with out
    out.colouring = out.nibble.colouring;
    if (!out.nibble.success) {
        out.failure = out.nibble.failure;
        return out;
    }

    out.stage = "finish";
    const double gamma = finishing_gamma(eps);
    if (options.mode == PipelineMode::Strict) {
        FinalLists lists;
        try {
            lists = build_final_lists(g, out.colouring, out.reserved, gamma);
        } catch (const InvalidArgument& err) {
            out.failure = err.what();
            return out;
        }
        out.finishing = check_finishing_hypotheses(g, out.colouring, lists, gamma, out.palette_size, registry.get());
        if (!out.finishing.ok()) {
            out.failure = "finishing hypotheses fail";
            return out;
        }
        out.completion = complete_colouring(g, out.colouring, lists, derive_seed(seed, {3}), options.finish_rounds);
        out.colouring = out.completion.colouring;
        if (!out.completion.success) {
            out.failure = out.completion.failure;
            return out;
        }
    } else {
        const std::size_t budget = 100 * g.edge_count() + 1000;
        out.repair = repair_extend(g, out.palette_size, out.colouring, derive_seed(seed, {4}), budget);
        out.colouring = out.repair.colouring;
        if (!out.repair.success) {
            out.failure = out.repair.failure;
            return out;
        }
    }

    out.stage = "done";
    if (!out.colouring.is_total() || !is_acyclic(g, out.colouring)) {
        out.failure = "final colouring failed verification";
        return out;
    }
    out.success = true;
    return out;
}

}  // namespace aec
