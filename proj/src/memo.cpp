#include "cgt/memo.hpp"

#include <mutex>

#include "cgt/errors.hpp"

namespace cgt {

template <class Map, class V>
std::optional<V> MemoStore::find(const Map& map, std::uint64_t expr, const PositionKey& pos) const {
    std::shared_lock lock(mutex_);
    auto it = map.find(Key{expr, pos});
    if (it == map.end()) {
        ++misses_;
        return std::nullopt;
    }
    ++hits_;
    return it->second;
}

template <class Map, class V>
void MemoStore::store(Map& map, std::uint64_t expr, const PositionKey& pos, V value) {
    std::unique_lock lock(mutex_);
    auto [it, inserted] = map.emplace(Key{expr, pos}, value);
    if (!inserted && it->second != value) throw InternalError("memo entry rewritten with a different value");
}

std::optional<Outcome> MemoStore::find_outcome(std::uint64_t expr, const PositionKey& pos) const {
    return find<decltype(outcomes_), Outcome>(outcomes_, expr, pos);
}

void MemoStore::store_outcome(std::uint64_t expr, const PositionKey& pos, Outcome value) {
    store(outcomes_, expr, pos, value);
}

std::optional<Nimber> MemoStore::find_nimber(std::uint64_t expr, const PositionKey& pos) const {
    return find<decltype(nimbers_), Nimber>(nimbers_, expr, pos);
}

void MemoStore::store_nimber(std::uint64_t expr, const PositionKey& pos, Nimber value) {
    store(nimbers_, expr, pos, value);
}

std::size_t MemoStore::size() const {
    std::shared_lock lock(mutex_);
    return outcomes_.size() + nimbers_.size();
}

void MemoStore::clear() {
    std::unique_lock lock(mutex_);
    outcomes_.clear();
    nimbers_.clear();
    hits_ = 0;
    misses_ = 0;
}

}  // namespace cgt
