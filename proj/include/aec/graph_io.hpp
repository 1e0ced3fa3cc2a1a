#pragma once

#include <filesystem>
#include <iosfwd>

#include "aec/graph.hpp"

namespace aec {

// Edge-list text format: first line "n m", then m lines "u v" with u < v.
// Edge ids follow line order. Errors raise FormatError with the line number.

Graph read_graph(std::istream& in);
void write_graph(const Graph& g, std::ostream& out);

Graph load_graph(const std::filesystem::path& path);
void save_graph(const Graph& g, const std::filesystem::path& path);

}  // namespace aec
