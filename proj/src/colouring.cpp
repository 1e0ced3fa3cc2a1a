#include "aec/colouring.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace aec {

std::size_t palette_size_for(double eps, std::size_t delta) {
    const double exact = (1.0 + eps) * static_cast<double>(delta);
    return static_cast<std::size_t>(std::ceil(exact - 1e-9 * std::max(1.0, exact)));
}

PartialEdgeColouring::PartialEdgeColouring(std::size_t edge_count, std::size_t palette_size)
    : palette_size_(palette_size), colours_(edge_count, kUncoloured) {}

Colour PartialEdgeColouring::colour(EdgeId e) const {
    if (e >= colours_.size()) throw InvalidArgument("edge id " + std::to_string(e) + " out of range");
    return colours_[e];
}

void PartialEdgeColouring::set(EdgeId e, Colour c) {
    if (e >= colours_.size()) throw InvalidArgument("edge id " + std::to_string(e) + " out of range");
    if (c < 0 || static_cast<std::size_t>(c) >= palette_size_) {
        throw InvalidArgument("colour " + std::to_string(c) + " outside palette of size " +
                              std::to_string(palette_size_));
    }
    colours_[e] = c;
}

void PartialEdgeColouring::clear(EdgeId e) {
    if (e >= colours_.size()) throw InvalidArgument("edge id " + std::to_string(e) + " out of range");
    colours_[e] = kUncoloured;
}

std::size_t PartialEdgeColouring::coloured_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(colours_.begin(), colours_.end(), [](Colour c) { return c != kUncoloured; }));
}

std::size_t PartialEdgeColouring::colours_used() const {
    std::vector<char> seen(palette_size_, 0);
    std::size_t used = 0;
    for (Colour c : colours_) {
        if (c != kUncoloured && !seen[c]) {
            seen[c] = 1;
            ++used;
        }
    }
    return used;
}

std::string colouring_to_json(const PartialEdgeColouring& chi) {
    // nlohmann::json objects sort keys as strings; write by hand to keep edge order.
    std::ostringstream out;
    out << "{\"palette_size\": " << chi.palette_size() << ", \"colours\": {";
    bool first = true;
    for (EdgeId e = 0; e < chi.edge_count(); ++e) {
        const Colour c = chi.colour(e);
        if (c == kUncoloured) continue;
        out << (first ? "" : ", ") << '"' << e << "\": " << c;
        first = false;
    }
    out << "}}\n";
    return out.str();
}

PartialEdgeColouring colouring_from_json(const std::string& text, std::size_t edge_count) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw FormatError(std::string("colouring JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("palette_size") || !doc.contains("colours") ||
        !doc["palette_size"].is_number_unsigned() || !doc["colours"].is_object()) {
        throw FormatError("colouring JSON needs an unsigned \"palette_size\" and a \"colours\" object");
    }
    PartialEdgeColouring chi(edge_count, doc["palette_size"].get<std::size_t>());
    for (const auto& [key, value] : doc["colours"].items()) {
        std::size_t pos = 0;
        unsigned long id = 0;
        try {
            id = std::stoul(key, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != key.size() || key.empty()) throw FormatError("colouring JSON: bad edge id \"" + key + "\"");
        if (id >= edge_count) throw FormatError("colouring JSON: edge id " + key + " out of range");
        if (!value.is_number_integer()) throw FormatError("colouring JSON: colour of edge " + key + " is not an integer");
        try {
            chi.set(static_cast<EdgeId>(id), value.get<Colour>());
        } catch (const InvalidArgument& e) {
            throw FormatError(std::string("colouring JSON: ") + e.what());
        }
    }
    return chi;
}

PartialEdgeColouring load_colouring(const std::filesystem::path& path, std::size_t edge_count) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return colouring_from_json(buffer.str(), edge_count);
}

void save_colouring(const PartialEdgeColouring& chi, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot write " + path.string());
    out << colouring_to_json(chi);
}

}  // namespace aec
