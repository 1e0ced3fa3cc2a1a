#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "aec/graph.hpp"

namespace aec {

/// Smallest integer >= (1+eps)*delta, tolerant of rounding noise in the
/// product (so that 1.1*10 gives 11, not 12).
std::size_t palette_size_for(double eps, std::size_t delta);

/// Edge -> colour map over the palette [0, palette_size); kUncoloured marks
/// edges without a colour.
class PartialEdgeColouring {
public:
    PartialEdgeColouring() = default;
    PartialEdgeColouring(std::size_t edge_count, std::size_t palette_size);

    std::size_t palette_size() const noexcept { return palette_size_; }
    std::size_t edge_count() const noexcept { return colours_.size(); }

    /// Throws InvalidArgument for an out-of-range edge id.
    Colour colour(EdgeId e) const;
    bool is_coloured(EdgeId e) const { return colour(e) != kUncoloured; }

    /// Throws InvalidArgument for an out-of-range edge or colour.
    void set(EdgeId e, Colour c);
    void clear(EdgeId e);

    std::size_t coloured_count() const noexcept;
    bool is_total() const noexcept { return coloured_count() == edge_count(); }
    /// Number of distinct colours on coloured edges.
    std::size_t colours_used() const;

    const std::vector<Colour>& raw() const noexcept { return colours_; }

    friend bool operator==(const PartialEdgeColouring&, const PartialEdgeColouring&) = default;

private:
    std::size_t palette_size_ = 0;
    std::vector<Colour> colours_;
};

/// {"palette_size": k, "colours": {"<edge_id>": c, ...}}; absent keys are
/// uncoloured. Keys are written in increasing edge order.
std::string colouring_to_json(const PartialEdgeColouring& chi);
PartialEdgeColouring colouring_from_json(const std::string& text, std::size_t edge_count);

PartialEdgeColouring load_colouring(const std::filesystem::path& path, std::size_t edge_count);
void save_colouring(const PartialEdgeColouring& chi, const std::filesystem::path& path);

}  // namespace aec
