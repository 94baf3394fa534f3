#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <shared_mutex>
#include <unordered_map>

#include "cgt/position.hpp"

namespace cgt {

enum class Outcome : std::uint8_t { P, N };

inline char outcome_letter(Outcome o) { return o == Outcome::P ? 'P' : 'N'; }

using Nimber = std::uint64_t;

struct MemoStats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
};

/// Write-once cache of evaluation results keyed by (canonical expression id,
/// position). Safe to share between threads; concurrent duplicate writes must
/// agree, otherwise InternalError is thrown.
class MemoStore {
public:
    std::optional<Outcome> find_outcome(std::uint64_t expr, const PositionKey& pos) const;
    void store_outcome(std::uint64_t expr, const PositionKey& pos, Outcome value);

    std::optional<Nimber> find_nimber(std::uint64_t expr, const PositionKey& pos) const;
    void store_nimber(std::uint64_t expr, const PositionKey& pos, Nimber value);

    MemoStats stats() const noexcept { return {hits_.load(), misses_.load()}; }
    std::size_t size() const;
    void clear();

private:
    struct Key {
        std::uint64_t expr;
        PositionKey pos;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            return std::hash<PositionKey>{}(k.pos) ^ (k.expr * 0x9e3779b97f4a7c15ULL);
        }
    };

    template <class Map, class V>
    std::optional<V> find(const Map& map, std::uint64_t expr, const PositionKey& pos) const;
    template <class Map, class V>
    void store(Map& map, std::uint64_t expr, const PositionKey& pos, V value);

    mutable std::shared_mutex mutex_;
    std::unordered_map<Key, Outcome, KeyHash> outcomes_;
    std::unordered_map<Key, Nimber, KeyHash> nimbers_;
    mutable std::atomic<std::uint64_t> hits_{0};
    mutable std::atomic<std::uint64_t> misses_{0};
};

}  // namespace cgt
