#include "aec/finisher.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "aec/rng.hpp"
#include "aec/verify.hpp"

namespace aec {

namespace {

constexpr std::uint64_t kFinishTag = 0x6669'6e69ULL;

// Acceptable colours per position parity; an empty set means none.
bool bicolourable(const std::vector<std::vector<Colour>>& allowed) {
    if (allowed.size() % 2 != 0) return false;
    std::vector<Colour> side[2];
    for (std::size_t j = 0; j < allowed.size(); ++j) {
        auto& acc = side[j % 2];
        if (j < 2) {
            acc = allowed[j];
            continue;
        }
        std::vector<Colour> next;
        std::set_intersection(acc.begin(), acc.end(), allowed[j].begin(), allowed[j].end(), std::back_inserter(next));
        acc.swap(next);
    }
    if (side[0].empty() || side[1].empty()) return false;
    return !(side[0].size() == 1 && side[1].size() == 1 && side[0][0] == side[1][0]);
}

}  // namespace

double finishing_gamma(double eps) { return eps * eps / 18.0; }

std::size_t final_list_size(double gamma, std::size_t delta) {
    const double x = gamma * static_cast<double>(delta);
    if (x <= 0.0) return 0;
    return static_cast<std::size_t>(std::floor(x * (1.0 + 1e-9)));
}

FinalLists build_final_lists(const Graph& g, const PartialEdgeColouring& chi, const ReservedSets& reserved,
                             double gamma) {
    const std::size_t size = final_list_size(gamma, g.max_degree());
    FinalLists lists;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (chi.is_coloured(e)) continue;
        const Edge& ed = g.edge(e);
        std::vector<Colour> shared = reserved.shared(ed.u, ed.v);
        if (shared.size() < size) {
            throw InvalidArgument("edge " + std::to_string(e) + " (" + std::to_string(ed.u) + "," +
                                  std::to_string(ed.v) + ") has " + std::to_string(shared.size()) +
                                  " shared reserved colours, needs " + std::to_string(size));
        }
        shared.resize(size);
        lists.emplace(e, std::move(shared));
    }
    return lists;
}

FinishingReport check_finishing_hypotheses(const Graph& g, const PartialEdgeColouring& chi, const FinalLists& lists,
                                           double gamma, std::size_t palette_size, const CycleRegistry* registry) {
    FinishingReport report;
    const std::size_t delta = g.max_degree();
    const std::size_t size = final_list_size(gamma, delta);
    const double crowd_bound = gamma * gamma * static_cast<double>(delta) / 128.0;

    std::set<Colour> used;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (chi.is_coloured(e)) used.insert(chi.colour(e));

    for (const auto& [e, list] : lists) {
        if (list.size() != size) report.wrong_size.push_back(e);
        used.insert(list.begin(), list.end());
        const Edge& ed = g.edge(e);
        for (Colour c : list) {
            std::size_t count = 0;
            for (VertexId end : {ed.u, ed.v}) {
                for (const Incidence& inc : g.incident(end)) {
                    if (inc.edge == e) continue;
                    auto it = lists.find(inc.edge);
                    if (it != lists.end() && std::binary_search(it->second.begin(), it->second.end(), c)) ++count;
                }
            }
            if (static_cast<double>(count) > crowd_bound) report.crowded.push_back({e, c, count});
        }
    }
    report.palette_used = used.size();
    report.palette_exceeded = used.size() > palette_size;

    if (registry) {
        report.cycles_checked = true;
        std::vector<std::vector<Colour>> allowed;
        for (std::size_t k = 0; k < registry->size(); ++k) {
            const auto& cycle = registry->edges[k];
            allowed.clear();
            std::size_t open = 0;
            for (EdgeId e : cycle) {
                if (chi.is_coloured(e)) {
                    allowed.push_back({chi.colour(e)});
                    continue;
                }
                ++open;
                auto it = lists.find(e);
                allowed.push_back(it == lists.end() ? std::vector<Colour>{} : it->second);
            }
            if (open < 3 && bicolourable(allowed)) report.short_cycles.push_back(k);
        }
    }
    return report;
}

CompletionResult complete_colouring(const Graph& g, const PartialEdgeColouring& chi, const FinalLists& lists,
                                    std::uint64_t seed, std::size_t max_rounds) {
    CompletionResult result;
    result.colouring = chi;
    auto& out = result.colouring;
    for (const auto& [e, list] : lists) {
        if (chi.is_coloured(e)) throw InvalidArgument("edge " + std::to_string(e) + " is coloured and has a list");
        if (list.empty()) {
            result.failure = "edge " + std::to_string(e) + " has an empty list";
            result.residual = {e};
            return result;
        }
    }
    std::vector<std::uint8_t> fresh(g.edge_count(), 0);
    auto draw = [&](EdgeId e, std::size_t round) {
        const auto& list = lists.at(e);
        KeyedStream rng(seed, {kFinishTag, round, e});
        out.clear(e);
        out.set(e, list[rng.below(list.size())]);
    };
    for (const auto& [e, list] : lists) {
        fresh[e] = 1;
        draw(e, 0);
    }

    for (std::size_t round = 1;; ++round) {
        std::set<EdgeId> redo;
        for (const auto& [a, b] : properness_violations(g, out)) {
            if (!fresh[a] && !fresh[b]) {
                result.failure = "edges " + std::to_string(a) + " and " + std::to_string(b) +
                                 " clash outside the lists";
                result.residual = {a, b};
                return result;
            }
            if (fresh[a]) redo.insert(a);
            if (fresh[b]) redo.insert(b);
        }
        if (redo.empty()) {
            for (const BicolouredCycle& cyc : find_bicoloured_cycles(g, out)) {
                bool touched = false;
                for (EdgeId e : cyc.edges) {
                    if (fresh[e]) {
                        redo.insert(e);
                        touched = true;
                    }
                }
                if (!touched) {
                    result.failure = "bicoloured cycle with no listed edge";
                    result.residual = cyc.edges;
                    return result;
                }
            }
        }
        if (redo.empty()) break;
        if (round > max_rounds) {
            result.failure = "resampling did not converge in " + std::to_string(max_rounds) + " rounds";
            result.residual.assign(redo.begin(), redo.end());
            result.rounds = max_rounds;
            return result;
        }
        result.rounds = round;
        for (EdgeId e : redo) draw(e, round);
        result.redraws += redo.size();
    }

    if (!out.is_total() || !is_acyclic(g, out)) {
        result.failure = "final colouring failed verification";
        return result;
    }
    result.success = true;
    return result;
}

}  // namespace aec
