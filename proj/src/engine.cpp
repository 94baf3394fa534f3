#include "cgt/engine.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "cgt/errors.hpp"

namespace cgt {

namespace {

struct Frame {
    Position pos;
    PositionKey key;
    // Per-leaf option keys; successors is their deduplicated union.
    std::vector<std::vector<PositionKey>> family;
    std::vector<Position> successors;
    std::size_t next = 0;
};

template <class LeafFn>
bool resolve_bool(const Expr& node, std::size_t& leaf, const LeafFn& leaf_fn) {
    if (node.is_base()) return leaf_fn(leaf++);
    bool any = false, all = true;
    for (const Expr& c : node.children()) {
        bool v = resolve_bool(c, leaf, leaf_fn);
        any = any || v;
        all = all && v;
    }
    return node.is_select() ? any : all;
}

std::vector<Nimber> resolve_values(const Expr& node, std::size_t& leaf,
                                   const std::vector<std::vector<Nimber>>& leaf_values) {
    if (node.is_base()) return leaf_values[leaf++];
    std::vector<Nimber> acc;
    bool first = true;
    for (const Expr& c : node.children()) {
        std::vector<Nimber> v = resolve_values(c, leaf, leaf_values);
        if (first) {
            acc = std::move(v);
            first = false;
            continue;
        }
        std::vector<Nimber> merged;
        if (node.is_select())
            std::set_union(acc.begin(), acc.end(), v.begin(), v.end(), std::back_inserter(merged));
        else
            std::set_intersection(acc.begin(), acc.end(), v.begin(), v.end(), std::back_inserter(merged));
        acc = std::move(merged);
    }
    return acc;
}

Nimber mex_sorted(const std::vector<Nimber>& sorted_unique) {
    Nimber m = 0;
    for (Nimber v : sorted_unique) {
        if (v == m)
            ++m;
        else if (v > m)
            break;
    }
    return m;
}

struct OutcomePolicy {
    using Value = Outcome;
    static std::optional<Value> find(const MemoStore& m, std::uint64_t id, const PositionKey& k) {
        return m.find_outcome(id, k);
    }
    static void store(MemoStore& m, std::uint64_t id, const PositionKey& k, Value v) { m.store_outcome(id, k, v); }
    static Value combine(const Expr& e, const Frame& f, const MemoStore& m) {
        std::size_t leaf = 0;
        bool mover_wins = resolve_bool(e, leaf, [&](std::size_t i) {
            return std::any_of(f.family[i].begin(), f.family[i].end(),
                               [&](const PositionKey& k) { return *m.find_outcome(e.id(), k) == Outcome::P; });
        });
        return mover_wins ? Outcome::N : Outcome::P;
    }
};

std::vector<Nimber> leaf_value_set(const Expr& e, const std::vector<PositionKey>& keys, const MemoStore& m) {
    std::vector<Nimber> vals;
    vals.reserve(keys.size());
    for (const PositionKey& k : keys) vals.push_back(*m.find_nimber(e.id(), k));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

std::vector<Nimber> value_set(const Expr& e, const Frame& f, const MemoStore& m) {
    std::vector<std::vector<Nimber>> leaf_values;
    leaf_values.reserve(f.family.size());
    for (const auto& keys : f.family) leaf_values.push_back(leaf_value_set(e, keys, m));
    std::size_t leaf = 0;
    return resolve_values(e, leaf, leaf_values);
}

struct NimberPolicy {
    using Value = Nimber;
    static std::optional<Value> find(const MemoStore& m, std::uint64_t id, const PositionKey& k) {
        return m.find_nimber(id, k);
    }
    static void store(MemoStore& m, std::uint64_t id, const PositionKey& k, Value v) { m.store_nimber(id, k, v); }
    static Value combine(const Expr& e, const Frame& f, const MemoStore& m) { return mex_sorted(value_set(e, f, m)); }
};

Frame expand(const Expr& e, const Position& x, PositionKey key) {
    Frame f;
    f.pos = x;
    f.key = std::move(key);
    auto family = joint_options(e, x);
    f.family.reserve(family.size());
    for (const auto& set : family) {
        std::vector<PositionKey> keys;
        keys.reserve(set.size());
        for (const Position& p : set) keys.push_back(PositionKey::of(p));
        f.family.push_back(std::move(keys));
        f.successors.insert(f.successors.end(), set.begin(), set.end());
    }
    std::sort(f.successors.begin(), f.successors.end());
    f.successors.erase(std::unique(f.successors.begin(), f.successors.end()), f.successors.end());
    return f;
}

std::string cycle_text(const std::vector<Position>& cycle) {
    std::string s;
    for (const Position& p : cycle) s += p.str() + " -> ";
    return s + cycle.front().str();
}

}  // namespace

template <class Policy>
typename Policy::Value Evaluator::evaluate(const Expr& e, const Position& root) {
    require_dimension(root, e.dimension(), "expression '" + e.render() + "'");
    PositionKey root_key = PositionKey::of(root);
    if (auto hit = Policy::find(memo_, e.id(), root_key)) return *hit;

    const TerminationWitness witness = joint_witness(e);
    std::vector<Frame> stack;
    std::unordered_map<PositionKey, std::size_t> on_stack;
    std::size_t expanded = 0;

    auto push = [&](const Position& x, PositionKey key) {
        if (++expanded > node_cap_)
            throw TerminationError("evaluation of '" + e.render() + "' from " + root.str() + " exceeded " +
                                   std::to_string(node_cap_) + " expanded positions");
        Frame f = expand(e, x, std::move(key));
        if (witness.is_measure()) {
            const Coord here = witness.measure(x);
            for (const Position& s : f.successors)
                if (witness.measure(s) >= here)
                    throw TerminationError("measure '" + witness.measure_name + "' does not decrease on move " +
                                           x.str() + " -> " + s.str());
        }
        on_stack.emplace(f.key, stack.size());
        stack.push_back(std::move(f));
    };

    push(root, root_key);
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next < top.successors.size()) {
            const Position& s = top.successors[top.next++];
            PositionKey k = PositionKey::of(s);
            if (auto it = on_stack.find(k); it != on_stack.end()) {
                std::vector<Position> cycle;
                for (std::size_t i = it->second; i < stack.size(); ++i) cycle.push_back(stack[i].pos);
                throw TerminationError("play under '" + e.render() + "' can cycle: " + cycle_text(cycle));
            }
            if (Policy::find(memo_, e.id(), k)) continue;
            Position copy = s;
            push(copy, std::move(k));
            continue;
        }
        auto value = Policy::combine(e, top, memo_);
        Policy::store(memo_, e.id(), top.key, value);
        on_stack.erase(top.key);
        stack.pop_back();
    }
    return *Policy::find(memo_, e.id(), root_key);
}

Outcome Evaluator::outcome(const Expr& e, const Position& x) { return evaluate<OutcomePolicy>(e, x); }

Nimber Evaluator::nimber(const Expr& e, const Position& x) { return evaluate<NimberPolicy>(e, x); }

std::vector<Nimber> Evaluator::reachable_values(const Expr& e, const Position& x) {
    nimber(e, x);
    Frame f = expand(e, x, PositionKey::of(x));
    return value_set(e, f, memo_);
}

ShortReport explore_short(const Position& x, const SuccessorFn& successors, const TerminationWitness& witness,
                          std::size_t node_cap) {
    ShortReport report;
    auto inconclusive = [&] {
        report.status = ShortReport::Status::Inconclusive;
        report.message = "exploration exceeded " + std::to_string(node_cap) + " positions";
        return report;
    };

    if (witness.is_measure()) {
        std::unordered_set<PositionKey> seen{PositionKey::of(x)};
        std::deque<Position> queue{x};
        while (!queue.empty()) {
            Position p = std::move(queue.front());
            queue.pop_front();
            if (++report.explored > node_cap) return inconclusive();
            const Coord here = witness.measure(p);
            for (Position& s : successors(p)) {
                if (witness.measure(s) >= here) {
                    report.status = ShortReport::Status::Violation;
                    report.message = "measure '" + witness.measure_name + "' does not decrease on move " + p.str() +
                                     " -> " + s.str();
                    report.bad_edge = std::make_pair(p, s);
                    return report;
                }
                if (seen.insert(PositionKey::of(s)).second) queue.push_back(std::move(s));
            }
        }
        return report;
    }

    // Iterative three-colour depth-first search.
    struct Item {
        Position pos;
        std::vector<Position> succ;
        std::size_t next = 0;
    };
    std::unordered_map<PositionKey, bool> done;  // false = on stack, true = finished
    std::vector<Item> stack;
    auto enter = [&](const Position& p) {
        ++report.explored;
        done[PositionKey::of(p)] = false;
        stack.push_back(Item{p, successors(p)});
    };
    enter(x);
    while (!stack.empty()) {
        if (report.explored > node_cap) return inconclusive();
        Item& top = stack.back();
        if (top.next == top.succ.size()) {
            done[PositionKey::of(top.pos)] = true;
            stack.pop_back();
            continue;
        }
        Position s = top.succ[top.next++];
        auto it = done.find(PositionKey::of(s));
        if (it == done.end()) {
            enter(s);
        } else if (!it->second) {
            auto start = std::find_if(stack.begin(), stack.end(), [&](const Item& i) { return i.pos == s; });
            for (auto i = start; i != stack.end(); ++i) report.cycle.push_back(i->pos);
            report.status = ShortReport::Status::Violation;
            report.message = "cycle " + cycle_text(report.cycle);
            return report;
        }
    }
    return report;
}

std::vector<Position> options(const Ruleset& r, const Position& x) { return r.options(x); }

Outcome outcome(const Ruleset& r, const Position& x, MemoStore& memo) {
    auto ptr = std::shared_ptr<const Ruleset>(std::shared_ptr<const Ruleset>{}, &r);
    return Evaluator(memo).outcome(Expr::base(ptr), x);
}

ShortReport check_short(const Ruleset& r, const Position& x, std::size_t node_cap) {
    require_dimension(x, r.dimension(), "ruleset '" + r.name() + "'");
    return explore_short(x, [&r](const Position& p) { return r.options(p); }, r.witness(), node_cap);
}

ShortReport check_jointly_short(const Expr& e, const Position& x, std::size_t node_cap) {
    require_dimension(x, e.dimension(), "expression '" + e.render() + "'");
    return explore_short(x, [&e](const Position& p) { return union_options(e, p); }, joint_witness(e), node_cap);
}

Outcome selective_outcome(const Expr& select, const Position& x, MemoStore& memo) {
    if (!select.is_select()) throw UsageError("'" + select.render() + "' is not a selective combination");
    return Evaluator(memo).outcome(select, x);
}

Outcome enforce_outcome_direct(const Expr& enforce, const Position& x, MemoStore& memo) {
    if (!enforce.is_enforce()) throw UsageError("'" + enforce.render() + "' is not an enforce combination");
    return Evaluator(memo).outcome(enforce, x);
}

std::string describe(const ShortReport& report) {
    switch (report.status) {
        case ShortReport::Status::Ok:
            return "short: explored " + std::to_string(report.explored) + " positions without a violation";
        case ShortReport::Status::Violation:
            return "violation: " + report.message;
        case ShortReport::Status::Inconclusive:
            return "inconclusive: " + report.message;
    }
    return {};
}

}  // namespace cgt
