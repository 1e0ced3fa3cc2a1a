#include "aec/graph_io.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

namespace aec {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
    throw FormatError("line " + std::to_string(line) + ": " + what);
}

// Parses exactly two unsigned integers from a line; anything else is an error.
bool parse_pair(const std::string& text, std::uint64_t& a, std::uint64_t& b) {
    std::istringstream ss(text);
    long long x = -1, y = -1;
    if (!(ss >> x >> y) || x < 0 || y < 0) return false;
    std::string rest;
    if (ss >> rest) return false;
    a = static_cast<std::uint64_t>(x);
    b = static_cast<std::uint64_t>(y);
    return true;
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

Graph read_graph(std::istream& in) {
    std::string text;
    std::size_t line = 0;
    std::uint64_t n = 0, m = 0;
    bool have_header = false;
    while (std::getline(in, text)) {
        ++line;
        if (blank(text)) continue;
        if (!parse_pair(text, n, m)) fail(line, "malformed header, expected \"n m\"");
        have_header = true;
        break;
    }
    if (!have_header) fail(line, "missing header");
    if (n > std::numeric_limits<VertexId>::max()) fail(line, "vertex count too large");

    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> seen;
    while (std::getline(in, text)) {
        ++line;
        if (blank(text)) continue;
        std::uint64_t u = 0, v = 0;
        if (!parse_pair(text, u, v)) fail(line, "malformed edge line");
        if (u >= n || v >= n) fail(line, "vertex index out of range [0, " + std::to_string(n) + ")");
        if (u == v) fail(line, "self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!seen.insert(u * n + v).second) fail(line, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        if (edges.size() == m) fail(line, "more edges than the declared m=" + std::to_string(m));
        edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v)});
    }
    if (edges.size() != m) {
        fail(line, "declared m=" + std::to_string(m) + " but found " + std::to_string(edges.size()) + " edges");
    }
    return Graph(n, std::move(edges));
}

void write_graph(const Graph& g, std::ostream& out) {
    out << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    return read_graph(in);
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path.string());
    write_graph(g, out);
}

}  // namespace aec
