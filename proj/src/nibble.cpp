#include "aec/nibble.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "aec/rng.hpp"
#include "aec/verify.hpp"

namespace aec {

namespace {

constexpr std::uint64_t kEdgeStreamTag = 0x6564'6765ULL;
constexpr std::uint64_t kVertexCoinTag = 0x7665'7274ULL;
const double kE2 = std::exp(2.0);
const double kEm2 = std::exp(-2.0);

}  // namespace

NibbleState::NibbleState(const Graph& g, const ReservedSets& reserved, const ScheduleParams& schedule,
                         std::shared_ptr<const CycleRegistry> registry)
    : g_(&g),
      reserved_(&reserved),
      schedule_(&schedule),
      registry_(std::move(registry)),
      palette_(reserved.palette_size()),
      chi_(g.edge_count(), reserved.palette_size()),
      lists_(g.edge_count()),
      t_(g.vertex_count() * palette_, 0),
      r_(g.vertex_count() * palette_, 0) {
    if (reserved.vertex_count() != g.vertex_count()) throw InvalidArgument("reserved sets do not match the graph");
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Edge& ed = g.edge(e);
        auto& list = lists_[e];
        for (std::size_t c = 0; c < palette_; ++c) {
            const auto col = static_cast<Colour>(c);
            if (!reserved.contains(ed.u, col) && !reserved.contains(ed.v, col)) list.push_back(col);
        }
        for (Colour c : list) {
            ++t_[ed.u * palette_ + c];
            ++t_[ed.v * palette_ + c];
        }
        for (Colour c : reserved.set(ed.u)) ++r_[ed.v * palette_ + c];
        for (Colour c : reserved.set(ed.v)) ++r_[ed.u * palette_ + c];
    }
}

bool NibbleState::in_list(EdgeId e, Colour c) const {
    const auto& list = lists_.at(e);
    return std::binary_search(list.begin(), list.end(), c);
}

std::size_t NibbleState::list_target() const {
    const double L = schedule_->L_at(iteration_);
    return L <= 0.0 ? 0 : static_cast<std::size_t>(std::floor(L));
}

void NibbleState::set_list(EdgeId e, std::vector<Colour> colours) {
    if (chi_.is_coloured(e)) throw InvalidArgument("edge " + std::to_string(e) + " is already coloured");
    const Edge& ed = g_->edge(e);
    for (Colour c : lists_[e]) {
        --t_[ed.u * palette_ + c];
        --t_[ed.v * palette_ + c];
    }
    std::sort(colours.begin(), colours.end());
    colours.erase(std::unique(colours.begin(), colours.end()), colours.end());
    for (Colour c : colours) {
        if (c < 0 || static_cast<std::size_t>(c) >= palette_) throw InvalidArgument("list colour outside the palette");
        ++t_[ed.u * palette_ + c];
        ++t_[ed.v * palette_ + c];
    }
    lists_[e] = std::move(colours);
}

bool NibbleState::recount_matches() const {
    std::vector<std::uint32_t> t(t_.size(), 0), r(r_.size(), 0);
    for (EdgeId e = 0; e < g_->edge_count(); ++e) {
        if (chi_.is_coloured(e)) continue;
        const Edge& ed = g_->edge(e);
        for (Colour c : lists_[e]) {
            ++t[ed.u * palette_ + c];
            ++t[ed.v * palette_ + c];
        }
        for (Colour c : reserved_->set(ed.u)) ++r[ed.v * palette_ + c];
        for (Colour c : reserved_->set(ed.v)) ++r[ed.u * palette_ + c];
    }
    return t == t_ && r == r_;
}

void NibbleState::truncate_lists() {
    const std::size_t target = list_target();
    for (EdgeId e = 0; e < g_->edge_count(); ++e) {
        auto& list = lists_[e];
        const Edge& ed = g_->edge(e);
        while (list.size() > target) {
            const Colour c = list.back();
            list.pop_back();
            --t_[ed.u * palette_ + c];
            --t_[ed.v * palette_ + c];
        }
    }
}

void NibbleState::colour_edge(EdgeId e, Colour c) {
    if (chi_.is_coloured(e)) throw InvalidArgument("edge " + std::to_string(e) + " is already coloured");
    chi_.set(e, c);
    const Edge& ed = g_->edge(e);
    for (Colour x : lists_[e]) {
        --t_[ed.u * palette_ + x];
        --t_[ed.v * palette_ + x];
    }
    lists_[e].clear();
    for (Colour x : reserved_->set(ed.u)) --r_[ed.v * palette_ + x];
    for (Colour x : reserved_->set(ed.v)) --r_[ed.u * palette_ + x];
}

void NibbleState::remove_from_list(EdgeId e, Colour c) {
    auto& list = lists_[e];
    auto it = std::lower_bound(list.begin(), list.end(), c);
    if (it == list.end() || *it != c) return;
    list.erase(it);
    const Edge& ed = g_->edge(e);
    --t_[ed.u * palette_ + c];
    --t_[ed.v * palette_ + c];
}

NibbleState init_state(const Graph& g, const ReservedSets& reserved, const ScheduleParams& schedule,
                       std::shared_ptr<const CycleRegistry> registry) {
    if (!girth(g).at_least(schedule.girth)) {
        throw InvalidArgument("graph girth is below the schedule's girth " + std::to_string(schedule.girth));
    }
    return NibbleState(g, reserved, schedule, std::move(registry));
}

double p_keep(const NibbleState& state, EdgeId e, Colour c) {
    const std::size_t L = state.list_target();
    if (L == 0) return 0.0;
    const Edge& ed = state.graph().edge(e);
    const double exponent = static_cast<double>(state.t(ed.u, c)) + static_cast<double>(state.t(ed.v, c)) - 2.0;
    return std::pow(1.0 - 1.0 / static_cast<double>(L), std::max(0.0, exponent));
}

double q_keep(const NibbleState& state, VertexId v, Colour c) {
    const std::size_t L = state.list_target();
    if (L == 0) return 1.0;
    return 1.0 - static_cast<double>(state.t(v, c)) / (kE2 * static_cast<double>(L));
}

AssignmentOutcome draw_assignment(const NibbleState& state, std::uint64_t seed) {
    const Graph& g = state.graph();
    const std::size_t m = g.edge_count();
    AssignmentOutcome out;
    out.assigned.assign(m, kUncoloured);
    out.conflict.assign(m, 0);
    out.retained.assign(m, 0);
    std::vector<KeyedStream> streams;
    streams.reserve(m);

    // Assignment.
    for (EdgeId e = 0; e < m; ++e) {
        streams.emplace_back(seed, std::initializer_list<std::uint64_t>{kEdgeStreamTag, state.iteration(), e});
        if (state.colouring().is_coloured(e)) continue;
        const auto& list = state.list(e);
        if (list.empty()) continue;
        out.assigned[e] = list[streams[e].below(list.size())];
        ++out.assigned_count;
    }

    // Conflicts: an edge sharing its colour with an adjacent assigned edge loses it.
    std::vector<std::pair<Colour, EdgeId>> at;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        at.clear();
        for (const Incidence& inc : g.incident(v))
            if (out.assigned[inc.edge] != kUncoloured) at.push_back({out.assigned[inc.edge], inc.edge});
        std::sort(at.begin(), at.end());
        for (std::size_t i = 0; i + 1 < at.size(); ++i) {
            if (at[i].first == at[i + 1].first) {
                out.conflict[at[i].second] = 1;
                out.conflict[at[i + 1].second] = 1;
            }
        }
    }

    // Equalizing coin, so that retention given assignment is exactly e^-2.
    for (EdgeId e = 0; e < m; ++e) {
        if (out.assigned[e] == kUncoloured) continue;
        if (out.conflict[e]) {
            ++out.conflict_count;
            continue;
        }
        const double p = p_keep(state, e, out.assigned[e]);
        double eq = 1.0 - 1.0 / (kE2 * p);
        if (eq < 0.0) {
            eq = 0.0;
            ++out.eq_clamped;
        }
        if (streams[e].uniform01() < eq) {
            ++out.equalized_count;
            continue;
        }
        out.retained[e] = 1;
        ++out.retained_count;
    }
    return out;
}

IterationStats run_iteration(NibbleState& state, std::uint64_t seed) {
    const Graph& g = state.graph();
    const std::size_t K = state.palette_size();
    IterationStats stats;
    stats.iteration = state.iteration();
    stats.uncoloured_before = g.edge_count() - state.colouring().coloured_count();

    state.truncate_lists();
    stats.list_target = state.list_target();
    const AssignmentOutcome outcome = draw_assignment(state, seed);
    stats.assigned = outcome.assigned_count;
    stats.conflicts = outcome.conflict_count;
    stats.equalized = outcome.equalized_count;
    stats.retained = outcome.retained_count;
    stats.eq_clamped = outcome.eq_clamped;

    // Retained colours and vertex coins decide removals from t_i, before anything changes.
    std::vector<std::uint8_t> removed(g.vertex_count() * K, 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!outcome.retained[e]) continue;
        const Edge& ed = g.edge(e);
        const Colour c = outcome.assigned[e];
        removed[ed.u * K + c] = 1;
        removed[ed.v * K + c] = 1;
        stats.retained_removals += 2;
    }
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (std::size_t c = 0; c < K; ++c) {
            const auto col = static_cast<Colour>(c);
            if (removed[v * K + c] || state.t(v, col) == 0) continue;
            double vq = 1.0 - (1.0 - kEm2) / q_keep(state, v, col);
            if (vq < 0.0 || vq > 1.0) {
                vq = std::clamp(vq, 0.0, 1.0);
                ++stats.vq_clamped;
            }
            KeyedStream coin(seed, {kVertexCoinTag, state.iteration(), v, c});
            if (coin.uniform01() < vq) {
                removed[v * K + c] = 1;
                ++stats.coin_removals;
            }
        }
    }

    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (outcome.retained[e]) state.colour_edge(e, outcome.assigned[e]);
    std::vector<Colour> drop;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (state.colouring().is_coloured(e)) continue;
        const Edge& ed = g.edge(e);
        drop.clear();
        for (Colour c : state.list(e))
            if (removed[ed.u * K + c] || removed[ed.v * K + c]) drop.push_back(c);
        for (Colour c : drop) state.remove_from_list(e, c);
    }
    state.advance();

    std::size_t total = 0;
    stats.min_list = std::numeric_limits<std::size_t>::max();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (state.colouring().is_coloured(e)) continue;
        ++stats.uncoloured_after;
        total += state.list(e).size();
        stats.min_list = std::min(stats.min_list, state.list(e).size());
    }
    if (stats.uncoloured_after == 0) stats.min_list = 0;
    stats.mean_list = stats.uncoloured_after ? static_cast<double>(total) / static_cast<double>(stats.uncoloured_after) : 0.0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (std::size_t c = 0; c < K; ++c) {
            stats.max_t = std::max(stats.max_t, state.t(v, static_cast<Colour>(c)));
            stats.max_r = std::max(stats.max_r, state.r(v, static_cast<Colour>(c)));
        }
    }
    return stats;
}

namespace {

// Colours an edge may take in a bicolouring: its colour, or reserved ∪ list.
std::vector<Colour> acceptable(const NibbleState& state, EdgeId e) {
    const Colour c = state.colouring().colour(e);
    if (c != kUncoloured) return {c};
    const Edge& ed = state.graph().edge(e);
    std::vector<Colour> out;
    const auto shared = state.reserved().shared(ed.u, ed.v);
    std::set_union(shared.begin(), shared.end(), state.list(e).begin(), state.list(e).end(),
                   std::back_inserter(out));
    return out;
}

}  // namespace

PairRecord evaluate_pair(const std::vector<EdgeId>& cycle, const NibbleState& state, Colour c, Colour d) {
    if (c > d) std::swap(c, d);
    PairRecord rec{c, d, true, 0, 0, 0, false, true};
    std::vector<PairLabel> labels;
    labels.reserve(cycle.size());
    const auto& chi = state.colouring();
    for (EdgeId e : cycle) {
        const Colour col = chi.colour(e);
        if (col != kUncoloured) {
            labels.push_back(col == c ? PairLabel::COnly : col == d ? PairLabel::DOnly : PairLabel::None);
            continue;
        }
        rec.bicoloured = false;
        const Edge& ed = state.graph().edge(e);
        const bool c_res = state.reserved().contains(ed.u, c) && state.reserved().contains(ed.v, c);
        const bool d_res = state.reserved().contains(ed.u, d) && state.reserved().contains(ed.v, d);
        const bool c_free = state.in_list(e, c);
        const bool d_free = state.in_list(e, d);
        const bool c_ok = c_res || c_free;
        const bool d_ok = d_res || d_free;
        labels.push_back(c_ok && d_ok ? PairLabel::Both : c_ok ? PairLabel::COnly : d_ok ? PairLabel::DOnly : PairLabel::None);
        rec.reserved_count += (c_res || d_res);
        rec.free_count += (c_free || d_free);
    }
    const auto mult = cycle_multiplicity(labels);
    rec.compatible = mult.has_value();
    rec.bicoloured = rec.bicoloured && rec.compatible;
    if (!rec.compatible) {
        rec.reserved_count = rec.free_count = 0;
        return rec;
    }
    rec.multiplicity = *mult;
    const double psi = state.schedule().psi_at(state.iteration());
    rec.significant = static_cast<double>(rec.multiplicity) <= psi && static_cast<double>(rec.reserved_count) <= psi;
    return rec;
}

std::vector<PairRecord> significant_pairs(const std::vector<EdgeId>& cycle, const NibbleState& state) {
    std::vector<Colour> used;
    std::vector<std::vector<Colour>> open;  // acceptable sets of uncoloured edges
    for (EdgeId e : cycle) {
        const Colour c = state.colouring().colour(e);
        if (c != kUncoloured)
            used.push_back(c);
        else
            open.push_back(acceptable(state, e));
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());

    std::vector<std::pair<Colour, Colour>> candidates;
    const auto K = static_cast<Colour>(state.palette_size());
    // Colours x such that every open set lacking `a` contains x.
    auto partners = [&](Colour a) {
        std::vector<Colour> result;
        bool constrained = false;
        for (const auto& set : open) {
            if (std::binary_search(set.begin(), set.end(), a)) continue;
            if (!constrained) {
                result = set;
                constrained = true;
            } else {
                std::vector<Colour> next;
                std::set_intersection(result.begin(), result.end(), set.begin(), set.end(), std::back_inserter(next));
                result.swap(next);
            }
        }
        if (!constrained)
            for (Colour x = 0; x < K; ++x) result.push_back(x);
        return result;
    };

    if (used.size() == 2) {
        candidates.push_back({used[0], used[1]});
    } else if (used.size() == 1) {
        for (Colour x : partners(used[0]))
            if (x != used[0]) candidates.push_back({std::min(x, used[0]), std::max(x, used[0])});
    } else if (used.empty() && !open.empty()) {
        // Some colour of the first edge belongs to the pair.
        for (Colour a : open.front())
            for (Colour x : partners(a))
                if (x != a) candidates.push_back({std::min(a, x), std::max(a, x)});
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<PairRecord> out;
    for (const auto& [c, d] : candidates) {
        PairRecord rec = evaluate_pair(cycle, state, c, d);
        if (rec.compatible) out.push_back(rec);
    }
    return out;
}

PropertyReport check_properties(const NibbleState& state) {
    const Graph& g = state.graph();
    const auto& sched = state.schedule();
    const std::size_t i = state.iteration();
    if (i > sched.iterations()) throw InvalidArgument("state is past the last scheduled iteration");
    PropertyReport report;
    report.index = i - 1;
    const double L = sched.L_at(i), T = sched.T_at(i), R = sched.R_at(i), Lambda = sched.lambda_at(i);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!state.colouring().is_coloured(e) && static_cast<double>(state.list(e).size()) < L)
            report.short_lists.push_back(e);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        for (std::size_t c = 0; c < state.palette_size(); ++c) {
            const auto col = static_cast<Colour>(c);
            if (static_cast<double>(state.t(v, col)) > T) report.crowded_lists.push_back({v, col});
            if (static_cast<double>(state.r(v, col)) > R) report.crowded_reserved.push_back({v, col});
        }
    }
    if (const CycleRegistry* reg = state.registry()) {
        report.cycles_checked = true;
        report.cycles_vacuous = Lambda <= 0.0;
        if (!report.cycles_vacuous) {
            for (std::size_t k = 0; k < reg->size(); ++k) {
                for (const PairRecord& rec : significant_pairs(reg->edges[k], state))
                    if (rec.significant && static_cast<double>(rec.free_count) < Lambda)
                        report.thin_cycles.push_back({k, rec.c, rec.d, rec.free_count});
            }
        }
    }
    return report;
}

FinalReport check_final_properties(const NibbleState& state) {
    const Graph& g = state.graph();
    const ReservedSets& S = state.reserved();
    FinalReport report;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const Colour c = state.colouring().colour(e);
        if (c != kUncoloured && (S.contains(g.edge(e).u, c) || S.contains(g.edge(e).v, c)))
            report.provenance.push_back(e);
    }
    const double threshold = state.schedule().r_threshold;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        for (Colour c : S.set(v))
            if (static_cast<double>(state.r(v, c)) > threshold) report.crowded.push_back({v, c});

    if (const CycleRegistry* reg = state.registry()) {
        report.cycles_checked = true;
        for (std::size_t k = 0; k < reg->size(); ++k) {
            const auto& cycle = reg->edges[k];
            if (cycle.size() % 2 != 0) continue;
            // Positions of one parity must share a colour X, the others a colour Y != X.
            std::vector<Colour> parity[2];
            bool seeded[2] = {false, false};
            std::size_t uncoloured = 0;
            for (std::size_t j = 0; j < cycle.size(); ++j) {
                const EdgeId e = cycle[j];
                const Colour c = state.colouring().colour(e);
                std::vector<Colour> allowed;
                if (c != kUncoloured) {
                    allowed = {c};
                } else {
                    ++uncoloured;
                    allowed = S.shared(g.edge(e).u, g.edge(e).v);
                }
                auto& acc = parity[j % 2];
                if (!seeded[j % 2]) {
                    acc = std::move(allowed);
                    seeded[j % 2] = true;
                } else {
                    std::vector<Colour> next;
                    std::set_intersection(acc.begin(), acc.end(), allowed.begin(), allowed.end(),
                                          std::back_inserter(next));
                    acc.swap(next);
                }
            }
            const bool bicolourable =
                !parity[0].empty() && !parity[1].empty() &&
                !(parity[0].size() == 1 && parity[1].size() == 1 && parity[0][0] == parity[1][0]);
            if (bicolourable && uncoloured < 3) report.short_bicolourable.push_back(k);
        }
    }
    return report;
}

NibbleResult run_nibble(const Graph& g, const ReservedSets& reserved, const ScheduleParams& schedule,
                        std::uint64_t seed, const NibblePolicy& policy,
                        std::shared_ptr<const CycleRegistry> registry) {
    NibbleResult result;
    auto state = std::make_shared<NibbleState>(init_state(g, reserved, schedule, std::move(registry)));
    PropertyReport initial = check_properties(*state);
    const bool initial_ok = initial.ok();
    result.properties.push_back(std::move(initial));
    if (policy.enforce_properties && !initial_ok) {
        result.failure = "P(0) does not hold for the given reservation";
        result.colouring = state->colouring();
        result.state = state;
        return result;
    }

    for (std::size_t i = 1; i <= schedule.i_star; ++i) {
        bool accepted = false;
        std::string reason;
        for (std::size_t attempt = 0; attempt <= policy.max_restarts; ++attempt) {
            auto trial = std::make_shared<NibbleState>(*state);
            IterationStats stats = run_iteration(*trial, derive_seed(seed, {i, attempt}));
            stats.attempt = attempt;
            PropertyReport report = check_properties(*trial);
            const bool proper = properness_violations(g, trial->colouring()).empty();
            const bool acyclic = proper && find_bicoloured_cycles(g, trial->colouring()).empty();
            if (!acyclic) {
                reason = proper ? "bicoloured cycle" : "improper colouring";
            } else if (policy.enforce_properties && !report.ok()) {
                reason = "P(" + std::to_string(i) + ") fails";
            } else {
                result.trace.push_back(stats);
                result.properties.push_back(std::move(report));
                state = std::move(trial);
                accepted = true;
                break;
            }
            if (attempt == policy.max_restarts) {
                result.trace.push_back(stats);
                result.properties.push_back(std::move(report));
            }
        }
        if (!accepted) {
            result.failure = "iteration " + std::to_string(i) + ": " + reason + " after " +
                             std::to_string(policy.max_restarts + 1) + " attempts";
            result.colouring = state->colouring();
            result.state = state;
            return result;
        }
    }

    result.final_report = check_final_properties(*state);
    result.colouring = state->colouring();
    result.state = state;
    if (policy.enforce_properties && !result.final_report.ok()) {
        result.failure = "final properties fail (provenance: " + std::to_string(result.final_report.provenance.size()) +
                         ", crowded: " + std::to_string(result.final_report.crowded.size()) +
                         ", short cycles: " + std::to_string(result.final_report.short_bicolourable.size()) + ")";
        return result;
    }
    result.success = true;
    return result;
}

std::string trace_to_jsonl(const std::vector<IterationStats>& trace) {
    std::ostringstream out;
    for (const auto& s : trace) {
        nlohmann::ordered_json j;
        j["iteration"] = s.iteration;
        j["attempt"] = s.attempt;
        j["uncoloured_before"] = s.uncoloured_before;
        j["list_target"] = s.list_target;
        j["assigned"] = s.assigned;
        j["conflicts"] = s.conflicts;
        j["equalized"] = s.equalized;
        j["retained"] = s.retained;
        j["uncoloured_after"] = s.uncoloured_after;
        j["retained_removals"] = s.retained_removals;
        j["coin_removals"] = s.coin_removals;
        j["eq_clamped"] = s.eq_clamped;
        j["vq_clamped"] = s.vq_clamped;
        j["mean_list"] = s.mean_list;
        j["min_list"] = s.min_list;
        j["max_t"] = s.max_t;
        j["max_r"] = s.max_r;
        out << j.dump() << '\n';
    }
    return out.str();
}

}  // namespace aec
