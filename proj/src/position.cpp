#include "cgt/position.hpp"

#include <algorithm>

#include "cgt/errors.hpp"

namespace cgt {

Coord Position::coordinate_sum() const noexcept {
    Coord s = 0;
    for (Coord c : coords_) s += c;
    return s;
}

bool Position::is_origin() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](Coord c) { return c == 0; });
}

std::string Position::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(coords_[i]);
    }
    return s + ")";
}

std::string Position::sum_str() const {
    std::string s;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(coords_[i]);
    }
    return s;
}

PositionKey PositionKey::of(const Position& p) {
    PositionKey key;
    const std::size_t d = p.dimension();
    if (d == 0) return key;
    const unsigned bits = static_cast<unsigned>(64 / d);
    const bool fits = bits >= 64 || std::all_of(p.coords().begin(), p.coords().end(),
                                                [bits](Coord c) { return (c >> bits) == 0; });
    if (fits && bits > 0) {
        std::uint64_t packed = 0;
        for (std::size_t i = 0; i < d; ++i) packed |= bits >= 64 ? p[i] : (p[i] << (i * bits));
        key.packed = packed;
        return key;
    }
    for (Coord c : p.coords()) {
        do {
            unsigned char byte = c & 0x7f;
            c >>= 7;
            if (c) byte |= 0x80;
            key.wide.push_back(static_cast<char>(byte));
        } while (c);
    }
    return key;
}

std::vector<Position> box_region(std::size_t dimension, Coord width, Coord height) {
    std::vector<Position> out;
    if (dimension == 1) {
        for (Coord x = 0; x < width; ++x) out.push_back(Position{x});
        return out;
    }
    if (dimension != 2) throw UsageError("box regions are defined for 1-D and 2-D boards only");
    for (Coord y = 0; y < height; ++y)
        for (Coord x = 0; x < width; ++x) out.push_back(Position{x, y});
    return out;
}

}  // namespace cgt
