#include "aec/reservation.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "aec/colouring.hpp"
#include "aec/rng.hpp"

namespace aec {

double reservation_probability(double eps) { return eps / (3.0 * std::sqrt(1.0 + eps)); }

ReservedSets::ReservedSets(std::size_t vertex_count, std::size_t palette_size, double epsilon)
    : palette_size_(palette_size), epsilon_(epsilon), sets_(vertex_count), member_(vertex_count * palette_size, 0) {}

void ReservedSets::check_colour(Colour c) const {
    if (c < 0 || static_cast<std::size_t>(c) >= palette_size_)
        throw InvalidArgument("colour " + std::to_string(c) + " outside palette of size " + std::to_string(palette_size_));
}

void ReservedSets::add(VertexId v, Colour c) {
    check_colour(c);
    auto& bit = member_[static_cast<std::size_t>(v) * palette_size_ + c];
    if (bit) return;
    bit = 1;
    auto& s = sets_.at(v);
    s.insert(std::lower_bound(s.begin(), s.end(), c), c);
}

void ReservedSets::remove(VertexId v, Colour c) {
    check_colour(c);
    auto& bit = member_[static_cast<std::size_t>(v) * palette_size_ + c];
    if (!bit) return;
    bit = 0;
    auto& s = sets_.at(v);
    s.erase(std::lower_bound(s.begin(), s.end(), c));
}

void ReservedSets::assign(VertexId v, std::vector<Colour> colours) {
    for (Colour c : sets_.at(v)) member_[static_cast<std::size_t>(v) * palette_size_ + c] = 0;
    std::sort(colours.begin(), colours.end());
    colours.erase(std::unique(colours.begin(), colours.end()), colours.end());
    for (Colour c : colours) {
        check_colour(c);
        member_[static_cast<std::size_t>(v) * palette_size_ + c] = 1;
    }
    sets_[v] = std::move(colours);
}

std::vector<Colour> ReservedSets::shared(VertexId u, VertexId v) const {
    std::vector<Colour> out;
    std::set_intersection(sets_.at(u).begin(), sets_.at(u).end(), sets_.at(v).begin(), sets_.at(v).end(),
                          std::back_inserter(out));
    return out;
}

std::size_t ReservedSets::shared_count(VertexId u, VertexId v) const {
    const auto& a = sets_.at(u);
    std::size_t count = 0;
    for (Colour c : a) count += contains(v, c);
    return count;
}

std::size_t ReservedSets::holders(const Graph& g, VertexId v, Colour c) const {
    std::size_t count = 0;
    for (const Incidence& inc : g.incident(v)) count += contains(inc.neighbour, c);
    return count;
}

ReservationBounds ReservationBounds::for_graph(double eps, std::size_t delta) {
    const double d = static_cast<double>(delta);
    return {4.0 * eps * d / 9.0, eps * eps * d / 18.0, eps * d / 2.0};
}

namespace {

constexpr std::uint64_t kReservationTag = 0x7265'7365'7276ULL;

void draw_set(ReservedSets& sets, VertexId v, double p, std::uint64_t seed, std::uint64_t round) {
    std::vector<Colour> colours;
    for (std::size_t c = 0; c < sets.palette_size(); ++c) {
        KeyedStream coin(seed, {kReservationTag, round, v, c});
        if (coin.bernoulli(p)) colours.push_back(static_cast<Colour>(c));
    }
    sets.assign(v, std::move(colours));
}

// Membership flips with incremental event counts. Violation amounts are the
// integer distance to the nearest admissible count.
class FocusedRepair {
public:
    FocusedRepair(const Graph& g, ReservedSets& sets, std::uint64_t seed)
        : g_(g), sets_(sets), k_(sets.palette_size()), rng_(seed, {kReservationTag, 0x666f'6375ULL}) {
        const auto bounds = ReservationBounds::for_graph(sets.epsilon(), g.max_degree());
        max_set_ = static_cast<long>(std::floor(bounds.max_set));
        min_shared_ = static_cast<long>(std::ceil(bounds.min_shared));
        max_holders_ = static_cast<long>(std::floor(bounds.max_holders));
        size_.assign(g.vertex_count(), 0);
        shared_.assign(g.edge_count(), 0);
        holders_.assign(g.vertex_count() * k_, 0);
        for (VertexId v = 0; v < g.vertex_count(); ++v) {
            size_[v] = static_cast<long>(sets.set(v).size());
            for (Colour c : sets.set(v))
                for (const Incidence& inc : g.incident(v)) ++holders_[inc.neighbour * k_ + c];
        }
        for (EdgeId e = 0; e < g.edge_count(); ++e)
            shared_[e] = static_cast<long>(sets.shared_count(g.edge(e).u, g.edge(e).v));
    }

    void pass() {
        struct Event {
            int kind;  // 0: A_v, 1: B_e, 2: C_{v,c}
            std::uint32_t a;
            Colour c;
        };
        std::vector<Event> events;
        for (VertexId v = 0; v < g_.vertex_count(); ++v)
            if (size_[v] > max_set_) events.push_back({0, v, 0});
        for (EdgeId e = 0; e < g_.edge_count(); ++e)
            if (shared_[e] < min_shared_) events.push_back({1, e, 0});
        for (VertexId v = 0; v < g_.vertex_count(); ++v)
            for (std::size_t c = 0; c < k_; ++c)
                if (holders_[v * k_ + c] > max_holders_) events.push_back({2, v, static_cast<Colour>(c)});
        shuffle_with(events, rng_);

        for (const Event& ev : events) {
            candidates_.clear();
            if (ev.kind == 0) {
                if (size_[ev.a] <= max_set_) continue;
                for (Colour c : sets_.set(ev.a)) candidates_.push_back({ev.a, c, false});
            } else if (ev.kind == 1) {
                if (shared_[ev.a] >= min_shared_) continue;
                const Edge& e = g_.edge(ev.a);
                for (Colour c : sets_.set(e.u))
                    if (!sets_.contains(e.v, c)) candidates_.push_back({e.v, c, true});
                for (Colour c : sets_.set(e.v))
                    if (!sets_.contains(e.u, c)) candidates_.push_back({e.u, c, true});
                if (candidates_.empty()) {
                    // S_u = S_v: put a fresh colour on both endpoints.
                    const auto c = static_cast<Colour>(rng_.below(k_));
                    flip({e.u, c, true});
                    flip({e.v, c, true});
                    continue;
                }
            } else {
                if (holders_[ev.a * k_ + ev.c] <= max_holders_) continue;
                for (const Incidence& inc : g_.incident(ev.a))
                    if (sets_.contains(inc.neighbour, ev.c)) candidates_.push_back({inc.neighbour, ev.c, false});
            }
            if (candidates_.empty()) continue;
            flip(choose());
        }
    }

private:
    struct Flip {
        VertexId v;
        Colour c;
        bool add;
    };

    static long excess(long value, long bound) { return value > bound ? value - bound : 0; }
    static long deficit(long value, long bound) { return value < bound ? bound - value : 0; }

    // Change in total violation amount if the flip were applied.
    long delta(const Flip& f) const {
        const long s = f.add ? 1 : -1;
        long d = excess(size_[f.v] + s, max_set_) - excess(size_[f.v], max_set_);
        for (const Incidence& inc : g_.incident(f.v)) {
            if (sets_.contains(inc.neighbour, f.c)) {
                const long sh = shared_[inc.edge];
                d += deficit(sh + s, min_shared_) - deficit(sh, min_shared_);
            }
            const long h = holders_[inc.neighbour * k_ + f.c];
            d += excess(h + s, max_holders_) - excess(h, max_holders_);
        }
        return d;
    }

    Flip choose() {
        if (rng_.bernoulli(kNoise)) return candidates_[rng_.below(candidates_.size())];
        long best = 0;
        std::size_t ties = 0;
        std::size_t pick = 0;
        for (std::size_t i = 0; i < candidates_.size(); ++i) {
            const long d = delta(candidates_[i]);
            if (ties == 0 || d < best) {
                best = d;
                ties = 1;
                pick = i;
            } else if (d == best && rng_.below(++ties) == 0) {
                pick = i;
            }
        }
        return candidates_[pick];
    }

    void flip(const Flip& f) {
        if (sets_.contains(f.v, f.c) == f.add) return;
        const long s = f.add ? 1 : -1;
        size_[f.v] += s;
        for (const Incidence& inc : g_.incident(f.v)) {
            if (sets_.contains(inc.neighbour, f.c)) shared_[inc.edge] += s;
            holders_[inc.neighbour * k_ + f.c] += s;
        }
        if (f.add)
            sets_.add(f.v, f.c);
        else
            sets_.remove(f.v, f.c);
    }

    static constexpr double kNoise = 0.1;

    const Graph& g_;
    ReservedSets& sets_;
    std::size_t k_;
    KeyedStream rng_;
    long max_set_, min_shared_, max_holders_;
    std::vector<long> size_, shared_, holders_;
    std::vector<Flip> candidates_;
};

}  // namespace

ReservedSets sample_reserved_sets(const Graph& g, double eps, std::uint64_t seed) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw InvalidArgument("eps must lie in [0, 1]");
    ReservedSets sets(g.vertex_count(), palette_size_for(eps, g.max_degree()), eps);
    const double p = reservation_probability(eps);
    for (VertexId v = 0; v < g.vertex_count(); ++v) draw_set(sets, v, p, seed, 0);
    return sets;
}

ReservationReport check_reservation(const Graph& g, const ReservedSets& sets) {
    if (sets.vertex_count() != g.vertex_count()) throw InvalidArgument("reserved sets do not match the graph");
    const auto bounds = ReservationBounds::for_graph(sets.epsilon(), g.max_degree());
    ReservationReport report;
    for (VertexId v = 0; v < g.vertex_count(); ++v)
        if (static_cast<double>(sets.set(v).size()) > bounds.max_set) report.oversized.push_back(v);
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (static_cast<double>(sets.shared_count(g.edge(e).u, g.edge(e).v)) < bounds.min_shared)
            report.thin_edges.push_back(e);
    std::vector<std::size_t> count(sets.palette_size());
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        std::fill(count.begin(), count.end(), 0);
        for (const Incidence& inc : g.incident(v))
            for (Colour c : sets.set(inc.neighbour)) ++count[c];
        for (std::size_t c = 0; c < count.size(); ++c)
            if (static_cast<double>(count[c]) > bounds.max_holders) report.crowded.push_back({v, static_cast<Colour>(c)});
    }
    return report;
}

ResampleResult resample_until_valid(const Graph& g, double eps, std::uint64_t seed, std::size_t max_rounds,
                                    ResampleRule rule) {
    if (max_rounds == 0) throw InvalidArgument("max_rounds must be positive");
    ReservedSets sets = sample_reserved_sets(g, eps, seed);
    const double p = reservation_probability(eps);
    std::optional<FocusedRepair> focused;
    for (std::size_t round = 1;; ++round) {
        ReservationReport report = check_reservation(g, sets);
        if (report.ok()) return {std::move(sets), round};
        if (round == max_rounds) {
            const std::string what = "reservation still has " + std::to_string(report.total()) +
                                     " violated events after " + std::to_string(round) + " rounds";
            throw ReservationFailure(what, std::move(report), round);
        }
        if (rule == ResampleRule::Focused) {
            if (!focused) focused.emplace(g, sets, seed);
            focused->pass();
            continue;
        }
        std::vector<char> redraw(g.vertex_count(), 0);
        for (VertexId v : report.oversized) redraw[v] = 1;
        for (EdgeId e : report.thin_edges) redraw[g.edge(e).u] = redraw[g.edge(e).v] = 1;
        for (const auto& [v, c] : report.crowded) {
            redraw[v] = 1;
            for (const Incidence& inc : g.incident(v)) redraw[inc.neighbour] = 1;
        }
        for (VertexId v = 0; v < g.vertex_count(); ++v)
            if (redraw[v]) draw_set(sets, v, p, seed, round);
    }
}

std::string reserved_to_json(const ReservedSets& sets) {
    nlohmann::json doc;
    doc["palette_size"] = sets.palette_size();
    auto& list = doc["sets"] = nlohmann::json::array();
    for (VertexId v = 0; v < sets.vertex_count(); ++v) list.push_back(sets.set(v));
    return doc.dump() + "\n";
}

ReservedSets reserved_from_json(const std::string& text, double eps) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("reserved sets JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("palette_size") || !doc.contains("sets") || !doc["sets"].is_array())
        throw FormatError("reserved sets JSON needs \"palette_size\" and \"sets\"");
    ReservedSets sets(doc["sets"].size(), doc["palette_size"].get<std::size_t>(), eps);
    try {
        for (std::size_t v = 0; v < doc["sets"].size(); ++v)
            sets.assign(static_cast<VertexId>(v), doc["sets"][v].get<std::vector<Colour>>());
    } catch (const nlohmann::json::exception& e) {
        throw FormatError(std::string("reserved sets JSON: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw FormatError(std::string("reserved sets JSON: ") + e.what());
    }
    return sets;
}

}  // namespace aec
