#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aec/baselines.hpp"
#include "aec/cycles.hpp"
#include "aec/generators.hpp"
#include "aec/graph_io.hpp"
#include "aec/pipeline.hpp"
#include "aec/regularizer.hpp"
#include "aec/verify.hpp"

namespace py = pybind11;
using namespace aec;

namespace {

Graph graph_from(std::size_t n, const std::vector<std::pair<VertexId, VertexId>>& edges) {
    std::vector<Edge> es;
    es.reserve(edges.size());
    for (const auto& [u, v] : edges) es.push_back({u, v});
    return Graph(n, std::move(es));
}

std::vector<std::pair<VertexId, VertexId>> edge_pairs(const Graph& g) {
    std::vector<std::pair<VertexId, VertexId>> out;
    for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
    return out;
}

// Colourings cross the boundary as lists with -1 for uncoloured edges.
PartialEdgeColouring colouring_from(const Graph& g, const std::vector<Colour>& colours, std::size_t palette) {
    if (colours.size() != g.edge_count()) throw InvalidArgument("one colour per edge expected");
    std::size_t k = palette;
    for (Colour c : colours) k = std::max<std::size_t>(k, static_cast<std::size_t>(c + 1));
    PartialEdgeColouring chi(g.edge_count(), k);
    for (EdgeId e = 0; e < colours.size(); ++e)
        if (colours[e] != kUncoloured) chi.set(e, colours[e]);
    return chi;
}

std::vector<Colour> colours_of(const PartialEdgeColouring& chi) {
    std::vector<Colour> out(chi.edge_count());
    for (EdgeId e = 0; e < chi.edge_count(); ++e) out[e] = chi.colour(e);
    return out;
}

std::optional<std::size_t> girth_of(const Graph& g) {
    const Girth gr = girth(g);
    if (gr.is_unbounded()) return std::nullopt;
    return gr.length();
}

}  // namespace

PYBIND11_MODULE(pyaec, m) {
    m.doc() = "Acyclic edge colouring of high-girth graphs";

    // Translators run newest first, so the base class goes first.
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

    py::class_<Graph>(m, "Graph")
        .def(py::init(&graph_from), py::arg("n"), py::arg("edges"))
        .def_property_readonly("vertex_count", &Graph::vertex_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def_property_readonly("max_degree", &Graph::max_degree)
        .def_property_readonly("min_degree", &Graph::min_degree)
        .def("edges", &edge_pairs)
        .def("degree", &Graph::degree)
        .def("girth", &girth_of, "None for forests")
        .def("__eq__", [](const Graph& a, const Graph& b) { return a == b; });

    m.def("load_graph", [](const std::string& p) { return load_graph(p); });
    m.def("save_graph", [](const Graph& g, const std::string& p) { save_graph(g, p); });
    m.def("random_regular", [](std::size_t n, std::size_t d, std::uint64_t seed) {
        return generate_random_regular(n, d, seed);
    });
    m.def("high_girth_regular", &generate_high_girth_regular, py::arg("n"), py::arg("d"), py::arg("g_min"),
          py::arg("seed"), py::arg("max_steps") = 1'000'000);
    m.def("bipartite_cayley", &generate_bipartite_cayley, py::arg("n"), py::arg("d"), py::arg("seed"));
    m.def("palette_size", &palette_size_for, py::arg("eps"), py::arg("delta"));

    m.def(
        "properness_violations",
        [](const Graph& g, const std::vector<Colour>& c) { return properness_violations(g, colouring_from(g, c, 0)); });
    m.def("bicoloured_cycles", [](const Graph& g, const std::vector<Colour>& c) {
        py::list out;
        for (const auto& cyc : find_bicoloured_cycles(g, colouring_from(g, c, 0)))
            out.append(py::make_tuple(cyc.c, cyc.d, cyc.vertices));
        return out;
    });
    m.def("is_acyclic", [](const Graph& g, const std::vector<Colour>& c) { return is_acyclic(g, colouring_from(g, c, 0)); });
    m.def("acyclic_index", &brute_force_acyclic_index, py::arg("g"), py::arg("max_colours"),
          py::arg("edge_guard") = 12);

    m.def(
        "schedule",
        [](double eps, std::size_t delta, std::size_t girth) {
            const ScheduleParams p = compute_schedule(eps, delta, girth);
            py::dict d;
            d["i_star"] = p.i_star;
            d["k"] = p.k;
            d["eta"] = p.eta;
            d["r_threshold"] = p.r_threshold;
            d["L"] = p.L;
            d["T"] = p.T;
            d["R"] = p.R;
            d["psi"] = p.psi;
            d["lambda"] = p.lambda;
            return d;
        },
        py::arg("eps"), py::arg("delta"), py::arg("girth"));
    py::register_exception<ScheduleError>(m, "ScheduleError", PyExc_RuntimeError);

    m.def(
        "reserve",
        [](const Graph& g, double eps, std::uint64_t seed, std::size_t max_rounds) {
            ResampleResult r = resample_until_valid(g, eps, seed, max_rounds);
            std::vector<std::vector<Colour>> sets;
            for (VertexId v = 0; v < g.vertex_count(); ++v) sets.push_back(r.sets.set(v));
            return py::make_tuple(sets, r.rounds);
        },
        py::arg("g"), py::arg("eps"), py::arg("seed"), py::arg("max_rounds") = 1000);

    m.def("cycle_multiplicity", [](const std::string& labels) {
        std::vector<PairLabel> ls;
        for (char ch : labels) {
            switch (ch) {
                case 'c': ls.push_back(PairLabel::COnly); break;
                case 'd': ls.push_back(PairLabel::DOnly); break;
                case 'b': ls.push_back(PairLabel::Both); break;
                case 'n': ls.push_back(PairLabel::None); break;
                default: throw InvalidArgument("labels are c, d, b or n");
            }
        }
        return cycle_multiplicity(ls);
    });

    m.def(
        "colour",
        [](const Graph& g, double eps, std::uint64_t seed, bool strict, bool use_registry) {
            PipelineOptions opts;
            opts.mode = strict ? PipelineMode::Strict : PipelineMode::Relaxed;
            opts.use_registry = use_registry;
            const PipelineResult r = run_pipeline(g, eps, seed, opts);
            py::dict d;
            d["success"] = r.success;
            d["stage"] = r.stage;
            d["failure"] = r.failure;
            d["palette_size"] = r.palette_size;
            d["colours"] = colours_of(r.colouring);
            d["nibble_colours"] = colours_of(r.nibble.colouring);
            d["iterations"] = r.nibble.trace.size();
            return d;
        },
        py::arg("g"), py::arg("eps"), py::arg("seed"), py::arg("strict") = false, py::arg("use_registry") = false);

    m.def(
        "repair_colour",
        [](const Graph& g, std::size_t K, std::uint64_t seed, std::size_t max_steps) {
            const RepairResult r = repair_colour(g, K, seed, max_steps);
            return py::make_tuple(r.success, colours_of(r.colouring), r.steps);
        },
        py::arg("g"), py::arg("K"), py::arg("seed"), py::arg("max_steps") = 1'000'000);

    m.def(
        "embed_regular",
        [](const Graph& g, std::size_t girth_target, std::uint64_t seed, std::size_t budget) {
            EmbedResult r = embed_regular(g, girth_target, seed, budget);
            return py::make_tuple(r.graph, r.copy0);
        },
        py::arg("g"), py::arg("girth_target"), py::arg("seed"), py::arg("budget") = 1'000'000);
}
