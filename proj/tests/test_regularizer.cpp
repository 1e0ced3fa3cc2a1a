#include <doctest.h>

#include <set>

#include "aec/generators.hpp"
#include "aec/regularizer.hpp"
#include "oracles.hpp"

using namespace aec;

namespace {

bool power_proper(const Graph& g, std::size_t r, const PowerColouring& pc) {
    const auto dist = oracle::distances(g);
    for (VertexId a = 0; a < g.vertex_count(); ++a)
        for (VertexId b = a + 1; b < g.vertex_count(); ++b)
            if (dist[a][b] <= r && pc.colour[a] == pc.colour[b]) return false;
    return true;
}

std::size_t distinct(const std::vector<std::uint32_t>& xs) {
    return std::set<std::uint32_t>(xs.begin(), xs.end()).size();
}

Graph complete_bipartite(std::size_t a, std::size_t b) {
    std::vector<Edge> edges;
    for (VertexId i = 0; i < a; ++i)
        for (VertexId j = 0; j < b; ++j) edges.push_back({i, static_cast<VertexId>(a + j)});
    return Graph(a + b, edges);
}

// Incidence graph of the Fano plane: points i, lines 7 + j, joined when
// i - j lies in {0, 1, 3} mod 7.
Graph heawood() {
    std::vector<Edge> edges;
    for (VertexId j = 0; j < 7; ++j)
        for (VertexId s : {0u, 1u, 3u}) edges.push_back({(j + s) % 7, 7 + j});
    return Graph(14, edges);
}

Graph star(std::size_t leaves) {
    std::vector<Edge> edges;
    for (VertexId v = 1; v <= leaves; ++v) edges.push_back({0, v});
    return Graph(leaves + 1, edges);
}

void check_matchings(const Graph& h, const PartialEdgeColouring& chi, std::size_t d) {
    REQUIRE(chi.is_total());
    CHECK(chi.colours_used() == d);
    for (std::size_t c = 0; c < d; ++c) {
        std::vector<int> covered(h.vertex_count(), 0);
        for (EdgeId e = 0; e < h.edge_count(); ++e) {
            if (chi.colour(e) != static_cast<Colour>(c)) continue;
            ++covered[h.edge(e).u];
            ++covered[h.edge(e).v];
        }
        for (int k : covered) CHECK(k == 1);
    }
}

}  // namespace

TEST_CASE("power colouring") {
    SUBCASE("square of P3 is a triangle") {
        const Graph p3(3, {{0, 1}, {1, 2}});
        const PowerColouring pc = power_colouring(p3, 2);
        CHECK(pc.colours == 3);
        CHECK(distinct(pc.colour) == 3);
        CHECK(pc.within_power_bound);
    }
    SUBCASE("radius one is a proper colouring") {
        for (std::uint64_t seed : {1, 2, 3}) {
            const Graph g = generate_random_regular(50, 4, seed);
            const PowerColouring pc = power_colouring(g, 1);
            for (const Edge& e : g.edges()) CHECK(pc.colour[e.u] != pc.colour[e.v]);
            CHECK(pc.colours <= pc.greedy_bound);
        }
    }
    SUBCASE("cubic graphs at radius three") {
        for (std::uint64_t seed : {1, 2, 3, 4}) {
            const Graph g = generate_random_regular(120, 3, seed);
            const PowerColouring pc = power_colouring(g, 3);
            CHECK(power_proper(g, 3, pc));
            CHECK(pc.colours == distinct(pc.colour));
            CHECK(pc.greedy_bound == 1 + 3 + 6 + 12);
            CHECK(pc.colours <= pc.greedy_bound);
        }
    }
    SUBCASE("small corpus") {
        const auto graphs = oracle::small_connected_graphs(AEC_TEST_DATA "/connected_upto7.txt");
        for (std::size_t i = 0; i < graphs.size(); i += 7)
            for (std::size_t r : {1, 2, 3}) CHECK(power_proper(graphs[i], r, power_colouring(graphs[i], r)));
    }
    SUBCASE("subset only") {
        const Graph g = oracle::cycle_graph(8);
        std::vector<std::uint8_t> mask(8, 0);
        mask[0] = mask[4] = 1;
        const PowerColouring pc = power_colouring(g, 3, &mask);
        CHECK(pc.colours == 1);
        CHECK(pc.colour[1] == PowerColouring::kNoColour);
    }
}

TEST_CASE("edge colouring of regular bipartite graphs") {
    const Graph c6 = oracle::cycle_graph(6);
    check_matchings(c6, bipartite_regular_edge_colouring(c6), 2);
    const Graph k33 = complete_bipartite(3, 3);
    check_matchings(k33, bipartite_regular_edge_colouring(k33), 3);
    check_matchings(heawood(), bipartite_regular_edge_colouring(heawood()), 3);
    const Graph cay = generate_bipartite_cayley(200, 7, 5);
    check_matchings(cay, bipartite_regular_edge_colouring(cay), 7);
    CHECK_THROWS_AS(bipartite_regular_edge_colouring(oracle::cycle_graph(5)), InvalidArgument);
    CHECK_THROWS_AS(bipartite_regular_edge_colouring(complete_bipartite(2, 3)), InvalidArgument);
}

TEST_CASE("embedding step") {
    SUBCASE("star with the Heawood graph") {
        const Graph g = star(3);
        const Graph out = embed_step(g, 6, heawood(), 1);
        CHECK(out.vertex_count() == 4 * 14);
        CHECK(out.min_degree() == 2);
        CHECK(out.max_degree() == 3);
        CHECK(girth(out).at_least(6));
        // Copy 0 keeps the star.
        for (VertexId v = 1; v <= 3; ++v) CHECK(out.find_edge(0, v).has_value());
    }
    SUBCASE("regular input gains no edges") {
        const Graph g = oracle::cycle_graph(5);
        const Graph out = embed_step(g, 5, heawood(), 1);
        CHECK(out.vertex_count() == 5 * 14);
        CHECK(out.edge_count() == 5 * 14);
        CHECK(out.min_degree() == 2);
    }
    SUBCASE("path on three vertices") {
        const Graph g(3, {{0, 1}, {1, 2}});
        const Graph h = build_matching_host(3, 6, 2);
        const Graph out = embed_step(g, 6, h, 4);
        const std::size_t copies = h.vertex_count();
        CHECK(out.edge_count() == 2 * copies + copies);  // each deficient endpoint gains one cross edge
        for (VertexId x = 0; x < copies; ++x) {
            CHECK(out.degree(x * 3 + 0) == 2);
            CHECK(out.degree(x * 3 + 1) == 2);
            CHECK(out.degree(x * 3 + 2) == 2);
        }
    }
    SUBCASE("host degree too small") {
        const Graph g = star(3);
        CHECK_THROWS_AS(embed_step(g, 6, oracle::cycle_graph(6), 1), InvalidArgument);
    }
    SUBCASE("random inputs") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const Graph base = generate_high_girth_regular(16, 3, 5, seed, 100000);
            std::vector<Edge> edges(base.edges().begin(), base.edges().end());
            edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(seed % edges.size()));
            const Graph g(16, edges);
            const std::size_t target = 5;
            const PowerColouring pc = power_colouring(g, target);
            const Graph h = build_matching_host(pc.colours, target, seed);
            const Graph out = embed_step(g, target, h, seed);
            CHECK(out.max_degree() == g.max_degree());
            CHECK(out.min_degree() == g.min_degree() + 1);
            CHECK(girth(out).at_least(std::min<std::size_t>(girth(g).length(), target)));
        }
    }
}

TEST_CASE("matching host") {
    for (std::size_t D : {2, 3, 5}) {
        const Graph h = build_matching_host(D, 6, 3);
        CHECK(h.min_degree() == D);
        CHECK(h.max_degree() == D);
        CHECK(girth(h).at_least(6));
    }
    const Graph deep = build_matching_host(3, 8, 3);
    CHECK(deep.min_degree() == 3);
    CHECK(girth(deep).at_least(8));
    CHECK(host_size_estimate(3, 6) == doctest::Approx(64.0));
}

TEST_CASE("full embedding") {
    SUBCASE("regular input is returned unchanged") {
        const Graph g = oracle::cycle_graph(5);
        const EmbedResult r = embed_regular(g, 5, 1);
        CHECK(r.steps == 0);
        CHECK(r.graph.vertex_count() == 5);
        CHECK(r.graph.edges() == g.edges());
    }
    SUBCASE("star becomes cubic") {
        const Graph g = star(3);
        const EmbedResult r = embed_regular(g, 5, 2);
        CHECK(r.graph.min_degree() == 3);
        CHECK(r.graph.max_degree() == 3);
        CHECK(girth(r.graph).at_least(5));
        REQUIRE(r.copy0.size() == 4);
        for (VertexId v = 1; v <= 3; ++v) CHECK(r.graph.find_edge(r.copy0[0], r.copy0[v]).has_value());
    }
    SUBCASE("deep girth target hits the budget") {
        try {
            embed_regular(star(3), 20, 1);
            FAIL("expected InvalidArgument");
        } catch (const InvalidArgument& err) {
            CHECK(std::string(err.what()).find("estimate") != std::string::npos);
        }
    }
}
