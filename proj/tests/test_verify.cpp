#include <doctest.h>

#include "aec/baselines.hpp"
#include "aec/generators.hpp"
#include "aec/rng.hpp"
#include "aec/verify.hpp"
#include "oracles.hpp"

using namespace aec;

namespace {

PartialEdgeColouring colouring(std::size_t palette, const std::vector<Colour>& colours) {
    PartialEdgeColouring chi(colours.size(), palette);
    for (EdgeId e = 0; e < colours.size(); ++e)
        if (colours[e] != kUncoloured) chi.set(e, colours[e]);
    return chi;
}

std::set<std::vector<EdgeId>> as_edge_sets(const std::vector<BicolouredCycle>& cycles) {
    std::set<std::vector<EdgeId>> out;
    for (const auto& c : cycles) {
        auto edges = c.edges;
        std::sort(edges.begin(), edges.end());
        out.insert(edges);
    }
    return out;
}

}  // namespace

TEST_CASE("palette size") {
    CHECK(palette_size_for(0.1, 10) == 11);
    CHECK(palette_size_for(0.5, 20) == 30);
    CHECK(palette_size_for(0.5, 21) == 32);
    CHECK(palette_size_for(0.0, 7) == 7);
}

TEST_CASE("partial colouring basics") {
    PartialEdgeColouring chi(4, 3);
    CHECK(chi.coloured_count() == 0);
    chi.set(1, 2);
    CHECK(chi.colour(1) == 2);
    CHECK(chi.is_coloured(1));
    CHECK_THROWS_AS(chi.set(0, 3), InvalidArgument);
    CHECK_THROWS_AS(chi.set(4, 0), InvalidArgument);
    CHECK_THROWS_AS(chi.colour(4), InvalidArgument);
    chi.set(0, 2);
    CHECK(chi.colours_used() == 1);
    chi.clear(1);
    CHECK(chi.coloured_count() == 1);
    CHECK_FALSE(chi.is_total());
}

TEST_CASE("colouring JSON round trip and errors") {
    const auto chi = colouring(5, {0, kUncoloured, 4, 1});
    CHECK(colouring_from_json(colouring_to_json(chi), 4) == chi);
    CHECK_THROWS_AS(colouring_from_json("{\"palette_size\": 3, \"colours\": {\"7\": 0}}", 4), FormatError);
    CHECK_THROWS_AS(colouring_from_json("{\"palette_size\": 3, \"colours\": {\"0\": 3}}", 4), FormatError);
    CHECK_THROWS_AS(colouring_from_json("{\"colours\": {}}", 4), FormatError);
    CHECK_THROWS_AS(colouring_from_json("not json", 4), FormatError);
}

TEST_CASE("properness on small examples") {
    const Graph c4 = oracle::cycle_graph(4);
    CHECK(properness_violations(c4, colouring(3, {1, 2, 1, 2})).empty());
    const Graph path(3, {{0, 1}, {1, 2}});
    const auto v = properness_violations(path, colouring(4, {3, 3}));
    REQUIRE(v.size() == 1);
    CHECK(v[0] == std::pair<EdgeId, EdgeId>{0, 1});
    CHECK_THROWS_AS(properness_violations(path, colouring(4, {3, 3, 3})), InvalidArgument);
}

TEST_CASE("properness matches a pairwise scan on baseline colourings") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const Graph g = generate_random_regular(30, 3, s);
        const RepairResult r = repair_colour(g, 8, s, 100000);
        REQUIRE(r.success);
        CHECK(properness_violations(g, r.colouring).empty());
        CHECK(oracle::clashes(g, r.colouring.raw()).empty());
        // Damage one edge and compare again.
        auto broken = r.colouring;
        const Edge& e = g.edge(0);
        const EdgeId other = g.incident(e.u)[0].edge == 0 ? g.incident(e.u)[1].edge : g.incident(e.u)[0].edge;
        broken.set(0, broken.colour(other));
        CHECK(properness_violations(g, broken) == oracle::clashes(g, broken.raw()));
    }
}

TEST_CASE("bicoloured cycles on small examples") {
    const Graph c4 = oracle::cycle_graph(4);
    const auto found = find_bicoloured_cycles(c4, colouring(4, {1, 2, 1, 2}));
    REQUIRE(found.size() == 1);
    CHECK(found[0].c == 1);
    CHECK(found[0].d == 2);
    CHECK(found[0].vertices == std::vector<VertexId>{0, 1, 2, 3});
    CHECK(find_bicoloured_cycles(c4, colouring(4, {1, 2, 1, 3})).empty());
    CHECK(find_bicoloured_cycles(c4, colouring(4, {1, 2, 1, kUncoloured})).empty());
    CHECK_THROWS_AS(find_bicoloured_cycles(c4, colouring(4, {1, 1, 2, 3})), NotProperError);
    CHECK_FALSE(is_acyclic(c4, colouring(4, {1, 1, 2, 3})));
}

TEST_CASE("canonical cycle form") {
    CHECK(canonical_cycle({3, 1, 2}) == std::vector<VertexId>{1, 2, 3});
    CHECK(canonical_cycle({2, 5, 0, 4}) == std::vector<VertexId>{0, 4, 2, 5});
    CHECK(canonical_cycle({0, 4, 2, 5}) == std::vector<VertexId>{0, 4, 2, 5});
}

TEST_CASE("K4 with an acyclic 5-colouring") {
    const Graph k4 = oracle::complete_graph(4);
    // Found by the exhaustive oracle below; edges 01 02 03 12 13 23.
    const auto cycles = oracle::all_cycles(k4);
    std::vector<Colour> colour(6, 0);
    bool found = false;
    while (!found) {
        if (oracle::clashes(k4, colour).empty() && oracle::bicoloured(cycles, colour).empty()) break;
        std::size_t pos = 0;
        while (colour[pos] == 4) colour[pos++] = 0;
        ++colour[pos];
    }
    const auto chi = colouring(5, colour);
    CHECK(find_bicoloured_cycles(k4, chi).empty());
    CHECK(is_acyclic(k4, chi));
}

TEST_CASE("verifier agrees with cycle enumeration on random colourings up to 8 vertices") {
    std::size_t instances = 0;
    for (std::size_t n = 3; n <= 8; ++n) {
        for (std::uint64_t s = 0; s < 30; ++s) {
            KeyedStream rng(n * 7919 + s);
            std::vector<Edge> edges;
            for (VertexId u = 0; u < n; ++u)
                for (VertexId v = u + 1; v < n; ++v)
                    if (rng.bernoulli(0.5)) edges.push_back({u, v});
            const Graph g(n, edges);
            const auto cycles = oracle::all_cycles(g);
            for (int trial = 0; trial < 60; ++trial) {
                const std::size_t k = 2 + rng.below(3);
                std::vector<Colour> colour(g.edge_count());
                for (auto& c : colour) c = rng.below(5) == 0 ? kUncoloured : static_cast<Colour>(rng.below(k));
                const auto chi = colouring(k, colour);
                const auto clashes = oracle::clashes(g, colour);
                CHECK(properness_violations(g, chi) == clashes);
                if (!clashes.empty()) {
                    CHECK_THROWS_AS(find_bicoloured_cycles(g, chi), NotProperError);
                } else {
                    CHECK(as_edge_sets(find_bicoloured_cycles(g, chi)) == oracle::bicoloured(cycles, colour));
                }
                ++instances;
            }
        }
    }
    CHECK(instances >= 10000);
}

TEST_CASE("acyclicity is invariant under colour permutation") {
    for (std::uint64_t s = 0; s < 10; ++s) {
        const Graph g = generate_random_regular(20, 3, s);
        const RepairResult r = repair_colour(g, 6, s, 100000);
        REQUIRE(r.success);
        std::vector<Colour> perm = {0, 1, 2, 3, 4, 5};
        KeyedStream rng(s);
        shuffle_with(perm, rng);
        PartialEdgeColouring relabelled(g.edge_count(), 6);
        for (EdgeId e = 0; e < g.edge_count(); ++e) relabelled.set(e, perm[r.colouring.colour(e)]);
        CHECK(is_acyclic(g, relabelled));
    }
}

TEST_CASE("acyclic index by backtracking") {
    for (std::size_t n = 3; n <= 9; ++n) CHECK(brute_force_acyclic_index(oracle::cycle_graph(n), 5) == 3u);
    CHECK(brute_force_acyclic_index(oracle::complete_graph(3), 5) == 3u);
    CHECK(brute_force_acyclic_index(oracle::complete_graph(4), 6) == 5u);
    CHECK(brute_force_acyclic_index(oracle::complete_graph(4), 4) == std::nullopt);
    CHECK(brute_force_acyclic_index(Graph(3, {}), 3) == 0u);
    CHECK_THROWS_AS(brute_force_acyclic_index(oracle::petersen(), 5), InvalidArgument);
}

TEST_CASE("acyclic index agrees with exhaustive search on small graphs") {
    const auto corpus = oracle::small_connected_graphs(AEC_TEST_DATA "/connected_upto7.txt");
    std::size_t checked = 0;
    for (const Graph& g : corpus) {
        if (g.vertex_count() > 5 || g.edge_count() > 7) continue;
        const std::size_t want = oracle::acyclic_index_exhaustive(g, g.max_degree() + 2);
        CHECK(brute_force_acyclic_index(g, g.max_degree() + 2).value_or(99) == want);
        ++checked;
    }
    CHECK(checked > 20);
}
