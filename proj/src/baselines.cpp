#include "aec/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

#include "aec/pipeline.hpp"
#include "aec/rng.hpp"
#include "aec/verify.hpp"

namespace aec {

namespace {

constexpr std::uint64_t kRepairTag = 0x7265'7061ULL;

class RepairRun {
public:
    RepairRun(const Graph& g, std::size_t K, const PartialEdgeColouring& start, std::uint64_t seed)
        : g_(g), K_(K), chi_(start), rng_(seed, {kRepairTag}), protected_(g.edge_count(), 0),
          pos_(g.edge_count(), kNone) {
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            if (start.is_coloured(e))
                protected_[e] = 1;
            else
                push(e);
        }
    }

    RepairResult run(std::size_t max_steps) {
        RepairResult out;
        std::vector<std::uint8_t> blocked(K_, 0);
        while (!open_.empty()) {
            if (out.steps == max_steps) {
                out.failure = "step budget of " + std::to_string(max_steps) + " exhausted with " +
                              std::to_string(open_.size()) + " edges uncoloured";
                out.colouring = chi_;
                return out;
            }
            ++out.steps;
            const EdgeId e = open_[rng_.below(open_.size())];
            const Edge& ed = g_.edge(e);
            std::fill(blocked.begin(), blocked.end(), 0);
            for (VertexId end : {ed.u, ed.v})
                for (const Incidence& inc : g_.incident(end))
                    if (chi_.is_coloured(inc.edge)) blocked[chi_.colour(inc.edge)] = 1;
            std::vector<Colour> avail;
            for (std::size_t c = 0; c < K_; ++c)
                if (!blocked[c]) avail.push_back(static_cast<Colour>(c));

            if (avail.empty()) {
                std::vector<EdgeId> movable;
                for (VertexId end : {ed.u, ed.v})
                    for (const Incidence& inc : g_.incident(end))
                        if (inc.edge != e && chi_.is_coloured(inc.edge) && !protected_[inc.edge])
                            movable.push_back(inc.edge);
                if (movable.empty()) {
                    out.failure = "edge " + std::to_string(e) + " is blocked by protected edges";
                    out.colouring = chi_;
                    return out;
                }
                uncolour(movable[rng_.below(movable.size())]);
                ++out.recolourings;
                continue;
            }

            const Colour c = avail[rng_.below(avail.size())];
            chi_.set(e, c);
            pop(e);
            const std::vector<EdgeId> cycle = cycle_through(e);
            if (!cycle.empty()) {
                ++out.recolourings;
                repair(cycle);
            }
        }
        out.colouring = chi_;
        if (!is_acyclic(g_, chi_)) {
            out.failure = "verifier rejected the final colouring";
            return out;
        }
        out.success = true;
        return out;
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    void push(EdgeId e) {
        pos_[e] = open_.size();
        open_.push_back(e);
    }
    void pop(EdgeId e) {
        const std::size_t p = pos_[e];
        open_[p] = open_.back();
        pos_[open_[p]] = p;
        open_.pop_back();
        pos_[e] = kNone;
    }
    void uncolour(EdgeId e) {
        chi_.clear(e);
        push(e);
    }

    std::optional<EdgeId> edge_with(VertexId v, Colour c) const {
        for (const Incidence& inc : g_.incident(v))
            if (chi_.colour(inc.edge) == c) return inc.edge;
        return std::nullopt;
    }

    // Edges of a bicoloured cycle through e, starting with e, or empty.
    std::vector<EdgeId> cycle_through(EdgeId e) const {
        const Edge& ed = g_.edge(e);
        const Colour c = chi_.colour(e);
        for (const Incidence& first : g_.incident(ed.u)) {
            const Colour d = chi_.colour(first.edge);
            if (first.edge == e || d == kUncoloured) continue;
            if (!edge_with(ed.v, d)) continue;
            std::vector<EdgeId> path{e, first.edge};
            VertexId at = first.neighbour;
            Colour want = c;
            while (true) {
                if (at == ed.v) break;
                const auto next = edge_with(at, want);
                if (!next) break;
                path.push_back(*next);
                at = g_.other(*next, at);
                want = want == c ? d : c;
            }
            if (at == ed.v) return path;
        }
        return {};
    }

    void repair(const std::vector<EdgeId>& cycle) {
        uncolour(cycle[0]);
        // The rest of the cycle split in two; prefer the shorter side, random on ties.
        const std::size_t rest = cycle.size() - 1;
        const std::size_t half = rest / 2;
        std::vector<EdgeId> near(cycle.begin() + 1, cycle.begin() + 1 + static_cast<std::ptrdiff_t>(half));
        std::vector<EdgeId> far(cycle.begin() + 1 + static_cast<std::ptrdiff_t>(rest - half), cycle.end());
        if (rest % 2 == 0 && rng_.below(2) == 1) std::swap(near, far);
        auto eligible = [&](const std::vector<EdgeId>& side) {
            std::vector<EdgeId> out;
            for (EdgeId f : side)
                if (!protected_[f]) out.push_back(f);
            return out;
        };
        std::vector<EdgeId> chosen = eligible(near);
        if (chosen.empty()) chosen = eligible(far);
        for (EdgeId f : chosen) uncolour(f);
    }

    const Graph& g_;
    std::size_t K_;
    PartialEdgeColouring chi_;
    KeyedStream rng_;
    std::vector<std::uint8_t> protected_;
    std::vector<EdgeId> open_;
    std::vector<std::size_t> pos_;
};

}  // namespace

RepairResult repair_extend(const Graph& g, std::size_t K, const PartialEdgeColouring& start, std::uint64_t seed,
                           std::size_t max_steps) {
    if (K < 1) throw InvalidArgument("repair needs at least one colour");
    if (start.edge_count() != g.edge_count()) throw InvalidArgument("colouring does not match the graph");
    if (start.palette_size() > K) throw InvalidArgument("start colouring uses a larger palette than K");
    if (!is_acyclic(g, start)) throw InvalidArgument("start colouring is not proper and acyclic");
    PartialEdgeColouring widened(g.edge_count(), K);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (start.is_coloured(e)) widened.set(e, start.colour(e));
    return RepairRun(g, K, widened, seed).run(max_steps);
}

RepairResult repair_colour(const Graph& g, std::size_t K, std::uint64_t seed, std::size_t max_steps) {
    return repair_extend(g, K, PartialEdgeColouring(g.edge_count(), K), seed, max_steps);
}

std::vector<CompareRow> compare(const Graph& g, double eps, const std::vector<std::uint64_t>& seeds, bool timing) {
    const std::size_t n = g.vertex_count();
    const std::size_t d = g.max_degree();
    const Girth gr = girth(g);
    const std::size_t girth_value = gr.is_finite() ? gr.length() : 0;
    const std::size_t K = palette_size_for(eps, d);
    std::vector<CompareRow> rows;
    auto ms_since = [timing](std::chrono::steady_clock::time_point t0) {
        if (!timing) return 0.0;
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    };
    for (std::uint64_t seed : seeds) {
        auto t0 = std::chrono::steady_clock::now();
        PipelineOptions opts;
        opts.mode = PipelineMode::Relaxed;
        opts.use_registry = false;
        const PipelineResult p = run_pipeline(g, eps, seed, opts);
        rows.push_back({"nibble", n, d, girth_value, eps, seed, p.success ? p.colouring.colours_used() : 0,
                        p.success, p.nibble.trace.size(), ms_since(t0)});

        t0 = std::chrono::steady_clock::now();
        const RepairResult r = K >= 1 ? repair_colour(g, K, seed, 100 * g.edge_count() + 1000) : RepairResult{};
        rows.push_back({"repair", n, d, girth_value, static_cast<double>(K), seed,
                        r.success ? r.colouring.colours_used() : 0, r.success, r.steps, ms_since(t0)});
    }
    std::stable_sort(rows.begin(), rows.end(), [](const CompareRow& a, const CompareRow& b) {
        return a.seed != b.seed ? a.seed < b.seed : a.algo < b.algo;
    });
    return rows;
}

std::string compare_header() { return "algo,n,d,girth,eps_or_K,seed,colours_used,success,rounds,millis"; }

std::string compare_to_csv(const std::vector<CompareRow>& rows, bool header) {
    std::ostringstream out;
    if (header) out << compare_header() << '\n';
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.3f", r.millis);
        out << r.algo << ',' << r.n << ',' << r.d << ',' << r.girth << ',' << r.eps_or_K << ',' << r.seed << ','
            << r.colours_used << ',' << (r.success ? 1 : 0) << ',' << r.rounds << ',' << buf << '\n';
    }
    return out.str();
}

}  // namespace aec
