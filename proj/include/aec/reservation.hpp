#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aec/graph.hpp"

namespace aec {

/// Inclusion probability of each colour in a reserved set: eps / (3 sqrt(1+eps)).
double reservation_probability(double eps);

/// Per-vertex reserved colour sets S_v over the palette [0, palette_size).
class ReservedSets {
public:
    ReservedSets() = default;
    ReservedSets(std::size_t vertex_count, std::size_t palette_size, double epsilon);

    std::size_t vertex_count() const noexcept { return sets_.size(); }
    std::size_t palette_size() const noexcept { return palette_size_; }
    double epsilon() const noexcept { return epsilon_; }

    /// S_v, sorted increasingly.
    const std::vector<Colour>& set(VertexId v) const { return sets_.at(v); }
    bool contains(VertexId v, Colour c) const noexcept {
        return member_[static_cast<std::size_t>(v) * palette_size_ + static_cast<std::size_t>(c)] != 0;
    }

    /// Adding a present colour or removing an absent one is a no-op.
    void add(VertexId v, Colour c);
    void remove(VertexId v, Colour c);
    void assign(VertexId v, std::vector<Colour> colours);

    /// S_u ∩ S_v, sorted.
    std::vector<Colour> shared(VertexId u, VertexId v) const;
    std::size_t shared_count(VertexId u, VertexId v) const;
    /// |S_{v,c}|: neighbours u of v with c in S_u.
    std::size_t holders(const Graph& g, VertexId v, Colour c) const;

    friend bool operator==(const ReservedSets& a, const ReservedSets& b) {
        return a.palette_size_ == b.palette_size_ && a.sets_ == b.sets_;
    }

private:
    void check_colour(Colour c) const;

    std::size_t palette_size_ = 0;
    double epsilon_ = 0.0;
    std::vector<std::vector<Colour>> sets_;
    std::vector<std::uint8_t> member_;
};

/// Real-valued bounds for a given eps and maximum degree.
struct ReservationBounds {
    double max_set;        // |S_v| <= 4 eps Delta / 9
    double min_shared;     // |S_u ∩ S_v| >= eps^2 Delta / 18
    double max_holders;    // |S_{v,c}| <= eps Delta / 2

    static ReservationBounds for_graph(double eps, std::size_t delta);
};

/// Violated events, each list sorted.
struct ReservationReport {
    std::vector<VertexId> oversized;                          // A_v
    std::vector<EdgeId> thin_edges;                           // B_e
    std::vector<std::pair<VertexId, Colour>> crowded;         // C_{v,c}

    bool ok() const noexcept { return oversized.empty() && thin_edges.empty() && crowded.empty(); }
    std::size_t total() const noexcept { return oversized.size() + thin_edges.size() + crowded.size(); }
};

/// Independent Bernoulli(reservation_probability(eps)) membership for every
/// (v, c), palette of size ceil((1+eps) Delta). Deterministic per seed.
ReservedSets sample_reserved_sets(const Graph& g, double eps, std::uint64_t seed);

ReservationReport check_reservation(const Graph& g, const ReservedSets& sets);

enum class ResampleRule {
    /// Per violated event, flip the single membership that repairs it with the
    /// least damage to other events (random choice with small probability).
    Focused,
    /// Redraw S_v for every vertex touched by a violated event: v for A_v,
    /// both endpoints for B_e, v and N(v) for C_{v,c}.
    FullRound,
};

struct ResampleResult {
    ReservedSets sets;
    std::size_t rounds;  // 1 when the first sample is already valid
};

class ReservationFailure : public Error {
public:
    ReservationFailure(const std::string& what, ReservationReport report, std::size_t rounds)
        : Error(what), report_(std::move(report)), rounds_(rounds) {}
    const ReservationReport& report() const noexcept { return report_; }
    std::size_t rounds() const noexcept { return rounds_; }

private:
    ReservationReport report_;
    std::size_t rounds_;
};

/// Samples, then resamples until check_reservation is empty. The result is
/// verified by a fresh check_reservation before it is returned. Throws
/// ReservationFailure after max_rounds checks.
ResampleResult resample_until_valid(const Graph& g, double eps, std::uint64_t seed, std::size_t max_rounds,
                                    ResampleRule rule = ResampleRule::Focused);

/// {"palette_size": k, "sets": [[...], ...]}
std::string reserved_to_json(const ReservedSets& sets);
ReservedSets reserved_from_json(const std::string& text, double eps);

}  // namespace aec
