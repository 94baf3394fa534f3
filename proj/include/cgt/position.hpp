#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace cgt {

using Coord = std::uint64_t;

/// A point of a game board Z>=0^d: heap sizes or board coordinates.
class Position {
public:
    Position() = default;
    Position(std::initializer_list<Coord> coords) : coords_(coords) {}
    explicit Position(std::vector<Coord> coords) : coords_(std::move(coords)) {}
    explicit Position(std::span<const Coord> coords) : coords_(coords.begin(), coords.end()) {}

    std::size_t dimension() const noexcept { return coords_.size(); }
    Coord operator[](std::size_t i) const { return coords_[i]; }
    Coord& operator[](std::size_t i) { return coords_[i]; }
    std::span<const Coord> coords() const noexcept { return coords_; }

    /// Sum of all coordinates; the default termination measure.
    Coord coordinate_sum() const noexcept;
    bool is_origin() const noexcept;

    /// "(3,1)" style rendering.
    std::string str() const;
    /// "3;1" style rendering used by the sum grammar.
    std::string sum_str() const;

    friend auto operator<=>(const Position&, const Position&) = default;
    friend bool operator==(const Position&, const Position&) = default;

private:
    std::vector<Coord> coords_;
};

/// Orders by coordinate sum, then lexicographically. Used wherever a report
/// has to pick one position out of many.
struct SmallestFirst {
    bool operator()(const Position& a, const Position& b) const {
        auto sa = a.coordinate_sum(), sb = b.coordinate_sum();
        if (sa != sb) return sa < sb;
        return a < b;
    }
};

/// Memo-table key. Coordinates are packed into one 64-bit word when each fits
/// in 64/d bits; otherwise `wide` holds a LEB128 encoding and `packed` is 0.
struct PositionKey {
    std::uint64_t packed = 0;
    std::string wide;

    static PositionKey of(const Position& p);

    friend bool operator==(const PositionKey&, const PositionKey&) = default;
};

/// Cartesian box [0,w) x [0,h) (2-D) or [0,w) (1-D), row-major.
std::vector<Position> box_region(std::size_t dimension, Coord width, Coord height = 1);

}  // namespace cgt

template <>
struct std::hash<cgt::PositionKey> {
    std::size_t operator()(const cgt::PositionKey& k) const noexcept {
        std::size_t h = std::hash<std::uint64_t>{}(k.packed);
        if (!k.wide.empty()) h ^= std::hash<std::string>{}(k.wide) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};
