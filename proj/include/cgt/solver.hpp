#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cgt/engine.hpp"
#include "cgt/sum.hpp"

namespace cgt {

struct SumValues {
    /// Per component: nimber, enforce nimber, or nimber of the union ruleset.
    std::vector<Nimber> values;
    Nimber total = 0;
    Outcome outcome = Outcome::P;
};

SumValues evaluate_sum(const SumGame& g, MemoStore& memo);
Outcome sum_outcome(const SumGame& g, MemoStore& memo);

/// Game-tree recursion over whole sums. Uses no nimbers. Refuses with a
/// GuardError once more than `node_cap` sums have been expanded.
class SumOracle {
public:
    explicit SumOracle(std::size_t node_cap = kDefaultNodeCap) : node_cap_(node_cap) {}

    Outcome outcome(const SumGame& g);
    std::size_t expanded() const noexcept { return expanded_; }

private:
    bool mover_wins(const SumGame& g);

    std::size_t node_cap_;
    std::size_t expanded_ = 0;
    std::unordered_map<std::string, bool> cache_;
    std::unordered_map<std::string, bool> on_path_;
};

Outcome sum_outcome_oracle(const SumGame& g, std::size_t node_cap = kDefaultNodeCap);

/// The mover's plan inside one component, mirroring its expression tree.
/// Base: the target square. Select: the chosen child and its plan. Enforce:
/// one plan per child, i.e. a reply for every enforcement.
struct MovePlan {
    Expr::Kind kind = Expr::Kind::Base;
    std::string ruleset;
    std::optional<Position> target;
    std::size_t chosen = 0;
    std::vector<MovePlan> children;
};

struct MoveAdvice {
    bool losing = true;
    std::size_t component = 0;
    /// Value the component must take for the sum to reach zero.
    Nimber needed = 0;
    Nimber resulting_nim_sum = 0;
    MovePlan plan;
};

MoveAdvice best_move(const SumGame& g, MemoStore& memo);

/// The mover's plan in `component`, reaching `needed`. nullopt if the
/// component cannot take that value.
std::optional<MovePlan> plan_for_value(const SumComponent& c, Nimber needed, MemoStore& memo);

struct EnforcementAdvice {
    std::size_t child = 0;
    /// False when every child lets the mover restore a zero sum; the child
    /// is then the one leaving the fewest winning replies.
    bool blocking = true;
};

/// Enforcement at the root of `component` against a mover who needs the
/// component to take `needed` (the value that zeroes the sum).
EnforcementAdvice best_enforcement(const SumGame& g, std::size_t component, MemoStore& memo);
/// Same choice at an arbitrary enforce node of a component's tree.
EnforcementAdvice choose_enforcement(const Expr& root, const Expr& node, const Position& pos, Nimber needed,
                                     MemoStore& memo);

/// Nimbers (under `root`) reachable through `node`'s subtree from `pos`.
std::vector<Nimber> subtree_values(const Expr& root, const Expr& node, const Position& pos, MemoStore& memo);

/// Text rendering of a plan, e.g. "enforce: bishop -> (1,0) | nim -> (0,3)".
std::string render_plan(const MovePlan& plan);

}  // namespace cgt
