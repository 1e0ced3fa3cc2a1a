// Command-line front end: gen, schedule, color, verify, embed, experiment.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "aec/baselines.hpp"
#include "aec/generators.hpp"
#include "aec/graph_io.hpp"
#include "aec/pipeline.hpp"
#include "aec/regularizer.hpp"
#include "aec/verify.hpp"

namespace {

using namespace aec;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string graph_text(const Graph& g) {
    std::ostringstream out;
    write_graph(g, out);
    return out.str();
}

Graph make_graph(const std::string& family, std::size_t n, std::size_t d, std::size_t g_min, std::uint64_t seed) {
    if (family == "random") return generate_random_regular(n, d, seed);
    if (family == "high-girth") return generate_high_girth_regular(n, d, g_min, seed, 2000 * n * d + 100000);
    if (family == "cayley") {
        Graph g = generate_bipartite_cayley(n, d, seed);
        if (!girth(g).at_least(g_min)) throw GenerationError("cayley family only guarantees girth 6");
        return g;
    }
    throw UsageError("unknown family '" + family + "' (random, high-girth, cayley)");
}

struct Options {
    std::string family = "cayley";
    std::size_t n = 0, d = 0, delta = 0, girth = 6;
    double eps = 0.5;
    std::uint64_t seed = 1;
    std::size_t lmax = 0, restarts = 10, colors = 0, seeds = 1, iterations = 0, max_steps = 0;
    std::string out, graph, colouring, trace, algo = "nibble", mode = "relaxed";
    bool no_registry = false, no_timing = false, require_total = false;
};

int cmd_gen(const Options& o) {
    write_text(o.out, graph_text(make_graph(o.family, o.n, o.d, o.girth, o.seed)));
    return kOk;
}

int cmd_schedule(const Options& o) {
    ScheduleParams p;
    try {
        p = o.iterations ? compute_schedule_with_iterations(o.eps, o.delta, o.girth, o.iterations)
                         : compute_schedule(o.eps, o.delta, o.girth);
    } catch (const ScheduleError& err) {
        std::cerr << "schedule: " << err.what() << "\n";
        return kFailed;
    }
    write_text(o.out, schedule_to_csv(p));
    return kOk;
}

int cmd_color(const Options& o) {
    const Graph g = load_graph(o.graph);
    PartialEdgeColouring chi;
    bool success = false;
    nlohmann::ordered_json summary;
    summary["algo"] = o.algo;
    if (o.algo == "nibble") {
        PipelineOptions opts;
        if (o.mode == "strict")
            opts.mode = PipelineMode::Strict;
        else if (o.mode == "relaxed")
            opts.mode = PipelineMode::Relaxed;
        else
            throw UsageError("--mode must be strict or relaxed");
        opts.l_max = o.lmax;
        opts.use_registry = !o.no_registry;
        opts.restarts = o.restarts;
        if (o.iterations) opts.iterations = o.iterations;
        const PipelineResult r = run_pipeline(g, o.eps, o.seed, opts);
        chi = r.colouring;
        success = r.success;
        summary["mode"] = o.mode;
        summary["stage"] = r.stage;
        summary["failure"] = r.failure;
        summary["palette"] = r.palette_size;
        summary["i_star"] = r.schedule.i_star;
        summary["forced_i_star"] = r.schedule.forced;
        summary["reservation_rounds"] = r.reservation_rounds;
        summary["reservation_fallback"] = r.reservation_fallback;
        summary["registry_skipped"] = r.registry_skipped;
        summary["iterations"] = r.nibble.trace.size();
        summary["nibble_coloured"] = r.nibble.colouring.coloured_count();
        if (!o.trace.empty()) write_text(o.trace, trace_to_jsonl(r.nibble.trace));
    } else if (o.algo == "repair") {
        const std::size_t K = o.colors ? o.colors : palette_size_for(o.eps, g.max_degree());
        const std::size_t steps = o.max_steps ? o.max_steps : 100 * g.edge_count() + 1000;
        const RepairResult r = repair_colour(g, K, o.seed, steps);
        chi = r.colouring;
        success = r.success;
        summary["palette"] = K;
        summary["failure"] = r.failure;
        summary["steps"] = r.steps;
        summary["recolourings"] = r.recolourings;
    } else {
        throw UsageError("--algo must be nibble or repair");
    }
    if (success && !(chi.is_total() && is_acyclic(g, chi))) {
        success = false;
        summary["failure"] = "verifier rejected the output";
    }
    summary["success"] = success;
    summary["colours_used"] = chi.colours_used();
    if (!o.out.empty()) save_colouring(chi, o.out);
    std::cerr << summary.dump() << "\n";
    return success ? kOk : kFailed;
}

int cmd_verify(const Options& o) {
    const Graph g = load_graph(o.graph);
    const PartialEdgeColouring chi = load_colouring(o.colouring, g.edge_count());
    int code = kOk;
    if (o.colors && chi.colours_used() > o.colors) {
        std::cout << "uses " << chi.colours_used() << " colours, more than " << o.colors << "\n";
        code = kFailed;
    }
    if (o.require_total && !chi.is_total()) {
        std::cout << (chi.edge_count() - chi.coloured_count()) << " edges uncoloured\n";
        code = kFailed;
    }
    const auto clashes = properness_violations(g, chi);
    if (!clashes.empty()) {
        for (const auto& [a, b] : clashes) std::cout << "clash: edges " << a << " " << b << "\n";
        return kFailed;
    }
    const auto cycles = find_bicoloured_cycles(g, chi);
    for (const auto& cyc : cycles) {
        std::cout << "bicoloured cycle (" << cyc.c << "," << cyc.d << "):";
        for (VertexId v : cyc.vertices) std::cout << ' ' << v;
        std::cout << "\n";
    }
    if (!cycles.empty()) code = kFailed;
    if (code == kOk) std::cout << "ok: proper and acyclic, " << chi.colours_used() << " colours\n";
    return code;
}

int cmd_embed(const Options& o) {
    const Graph g = load_graph(o.graph);
    const EmbedResult r = embed_regular(g, o.girth, o.seed);
    write_text(o.out, graph_text(r.graph));
    nlohmann::ordered_json side;
    side["girth_target"] = o.girth;
    side["steps"] = r.steps;
    side["copy0"] = r.copy0;
    if (!o.out.empty() && o.out != "-") write_text(o.out + ".json", side.dump() + "\n");
    return kOk;
}

int cmd_experiment(const Options& o) {
    const Graph g = o.graph.empty() ? make_graph(o.family, o.n, o.d, o.girth, o.seed) : load_graph(o.graph);
    std::vector<std::uint64_t> seeds;
    for (std::size_t k = 0; k < o.seeds; ++k) seeds.push_back(o.seed + k);
    write_text(o.out, compare_to_csv(compare(g, o.eps, seeds, !o.no_timing)));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acyclic edge colouring toolkit"};
    app.require_subcommand(1);
    Options o;

    auto* gen = app.add_subcommand("gen", "generate a regular graph");
    gen->add_option("--family", o.family, "random, high-girth or cayley")->capture_default_str();
    gen->add_option("--n", o.n, "vertices")->required();
    gen->add_option("--delta,--d", o.d, "degree")->required();
    gen->add_option("--girth", o.girth, "minimum girth (high-girth, cayley)")->capture_default_str();
    gen->add_option("--seed", o.seed)->capture_default_str();
    gen->add_option("--out", o.out, "edge list file (default stdout)");

    auto* sched = app.add_subcommand("schedule", "print the parameter table as CSV");
    sched->add_option("--eps", o.eps)->required();
    sched->add_option("--delta", o.delta)->required();
    sched->add_option("--girth", o.girth)->required();
    sched->add_option("--iterations", o.iterations, "impose i* instead of the stopping rule");
    sched->add_option("--out", o.out);

    auto* color = app.add_subcommand("color", "colour a graph");
    color->add_option("graph", o.graph, "edge list file")->required();
    color->add_option("--algo", o.algo, "nibble or repair")->capture_default_str();
    color->add_option("--mode", o.mode, "strict or relaxed (nibble)")->capture_default_str();
    color->add_option("--eps", o.eps)->capture_default_str();
    color->add_option("--seed", o.seed)->capture_default_str();
    color->add_option("--lmax", o.lmax, "registry cycle length (default 2*girth)");
    color->add_flag("--no-registry", o.no_registry, "skip the cycle registry");
    color->add_option("--restarts", o.restarts, "restarts per nibble iteration")->capture_default_str();
    color->add_option("--iterations", o.iterations, "impose i*");
    color->add_option("--colors", o.colors, "palette size for repair (default ceil((1+eps)Delta))");
    color->add_option("--max-steps", o.max_steps, "step budget for repair");
    color->add_option("--out", o.out, "colouring JSON");
    color->add_option("--trace", o.trace, "per-iteration JSON lines");

    auto* verify = app.add_subcommand("verify", "check a colouring");
    verify->add_option("graph", o.graph)->required();
    verify->add_option("colouring", o.colouring)->required();
    verify->add_option("--colors", o.colors, "maximum number of colours");
    verify->add_flag("--total", o.require_total, "require every edge coloured");

    auto* embed = app.add_subcommand("embed", "embed into a regular graph of the same girth");
    embed->add_option("graph", o.graph)->required();
    embed->add_option("--girth", o.girth, "girth target")->capture_default_str();
    embed->add_option("--seed", o.seed)->capture_default_str();
    embed->add_option("--out", o.out, "edge list; a .json sidecar maps the original vertices");

    auto* exper = app.add_subcommand("experiment", "nibble vs repair over a seed range, CSV");
    exper->add_option("--graph", o.graph, "edge list (otherwise generated)");
    exper->add_option("--family", o.family)->capture_default_str();
    exper->add_option("--n", o.n);
    exper->add_option("--delta,--d", o.d);
    exper->add_option("--girth", o.girth)->capture_default_str();
    exper->add_option("--eps", o.eps)->capture_default_str();
    exper->add_option("--seed", o.seed, "first seed")->capture_default_str();
    exper->add_option("--seeds", o.seeds, "number of seeds")->capture_default_str();
    exper->add_flag("--no-timing", o.no_timing, "write 0 in the millis column");
    exper->add_option("--out", o.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) return cmd_gen(o);
        if (*sched) return cmd_schedule(o);
        if (*color) return cmd_color(o);
        if (*verify) return cmd_verify(o);
        if (*embed) return cmd_embed(o);
        if (*exper) return cmd_experiment(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return kFailed;
    }
    return kUsage;
}
