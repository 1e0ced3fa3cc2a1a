#include <doctest.h>

#include <cmath>
#include <sstream>

#include "aec/baselines.hpp"
#include "aec/generators.hpp"
#include "aec/pipeline.hpp"
#include "aec/verify.hpp"
#include "oracles.hpp"

using namespace aec;

TEST_CASE("repair on short cycles") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const RepairResult r = repair_colour(oracle::cycle_graph(5), 3, seed, 10000);
        REQUIRE(r.success);
        CHECK(r.colouring.is_total());
        CHECK(oracle::clashes(oracle::cycle_graph(5), r.colouring.raw()).empty());
        CHECK(is_acyclic(oracle::cycle_graph(5), r.colouring));
    }
    for (std::size_t n : {4, 5, 6}) {
        const RepairResult r = repair_colour(oracle::cycle_graph(n), 2, 1, 2000);
        CHECK_FALSE(r.success);
        CHECK_FALSE(r.failure.empty());
    }
}

TEST_CASE("repair on cubic graphs with 4 Delta - 4 colours") {
    std::size_t ok = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Graph g = generate_random_regular(100 + 2 * seed, 3, seed);
        const RepairResult r = repair_colour(g, 8, seed, 100 * g.edge_count());
        ok += r.success && r.colouring.is_total() && is_acyclic(g, r.colouring) && r.colouring.colours_used() <= 8;
    }
    CHECK(ok == 50);
}

TEST_CASE("repair keeps the starting colours") {
    const Graph g = generate_bipartite_cayley(100, 4, 3);
    const RepairResult base = repair_colour(g, 7, 1, 100000);
    REQUIRE(base.success);
    PartialEdgeColouring start = base.colouring;
    for (EdgeId e = 0; e < g.edge_count(); e += 2) start.clear(e);
    const RepairResult r = repair_extend(g, 7, start, 5, 100000);
    REQUIRE(r.success);
    CHECK(is_acyclic(g, r.colouring));
    for (EdgeId e = 1; e < g.edge_count(); e += 2) CHECK(r.colouring.colour(e) == start.colour(e));

    PartialEdgeColouring bad(g.edge_count(), 7);
    const Edge e0 = g.edge(0);
    const EdgeId other = g.incident(e0.u)[0].edge == 0 ? g.incident(e0.u)[1].edge : g.incident(e0.u)[0].edge;
    bad.set(0, 1);
    bad.set(other, 1);
    CHECK_THROWS_AS(repair_extend(g, 7, bad, 1, 100), InvalidArgument);
}

TEST_CASE("comparison table") {
    const Graph g = generate_bipartite_cayley(60, 3, 1);
    CHECK(compare_to_csv(compare(g, 0.5, {}, false)) == compare_header() + "\n");

    const auto rows = compare(g, 0.5, {7}, false);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].algo == "nibble");
    CHECK(rows[1].algo == "repair");
    for (const auto& r : rows) {
        CHECK(r.n == 60);
        CHECK(r.d == 3);
        CHECK(r.girth >= 6);
        CHECK(r.millis == 0.0);
    }
    CHECK(rows[1].eps_or_K == 5.0);
    CHECK(compare_to_csv(rows) == compare_to_csv(compare(g, 0.5, {7}, false)));

    std::istringstream in(compare_to_csv(compare(g, 0.5, {1, 2, 3}, false)));
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) ++lines;
    CHECK(lines == 7);
}

TEST_CASE("desk iteration count") {
    for (double eps : {0.3, 0.5, 0.9}) {
        for (std::size_t delta : {5, 20, 100}) {
            const std::size_t i = desk_iterations(eps, delta, 6);
            CHECK(i >= 1);
            const ScheduleParams p = compute_schedule_with_iterations(eps, delta, 6, i + 1);
            if (p.L_at(2) >= 1.0) {
                CHECK(std::floor(p.L_at(i + 1)) >= 1.0);
                CHECK(std::floor(p.L_at(i + 2)) < 1.0);
            }
        }
    }
}

TEST_CASE("relaxed pipeline") {
    const Graph g = generate_bipartite_cayley(400, 8, 2);
    for (std::uint64_t seed : {1, 2}) {
        PipelineOptions opts;
        opts.mode = PipelineMode::Relaxed;
        opts.use_registry = false;
        const PipelineResult r = run_pipeline(g, 0.5, seed, opts);
        REQUIRE(r.success);
        CHECK(r.stage == "done");
        CHECK(r.palette_size == 12);
        CHECK(r.colouring.is_total());
        CHECK(oracle::clashes(g, r.colouring.raw()).empty());
        CHECK(is_acyclic(g, r.colouring));
        CHECK(r.colouring.colours_used() <= r.palette_size);
        // Nibble colours avoid the endpoints' reserved sets.
        for (EdgeId e = 0; e < g.edge_count(); ++e) {
            const Colour c = r.nibble.colouring.colour(e);
            if (c == kUncoloured) continue;
            CHECK_FALSE(r.reserved.contains(g.edge(e).u, c));
            CHECK_FALSE(r.reserved.contains(g.edge(e).v, c));
            CHECK(r.colouring.colour(e) == c);
        }
        const PipelineResult again = run_pipeline(g, 0.5, seed, opts);
        CHECK(again.colouring == r.colouring);
    }
}

TEST_CASE("strict pipeline reports where it stops") {
    const Graph g = generate_bipartite_cayley(200, 6, 4);
    PipelineOptions opts;
    opts.reservation_rounds = 50;
    const PipelineResult r = run_pipeline(g, 0.5, 3, opts);
    if (r.success) {
        CHECK(is_acyclic(g, r.colouring));
        CHECK(r.colouring.is_total());
    } else {
        CHECK_FALSE(r.failure.empty());
        CHECK(r.stage != "done");
    }
}
