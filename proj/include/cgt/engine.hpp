#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cgt/expr.hpp"
#include "cgt/memo.hpp"

namespace cgt {

inline constexpr std::size_t kDefaultNodeCap = 1'000'000;

/// Demand-driven evaluation of outcomes and nimbers over an expression.
///
/// Play under an expression resolves each move through the expression tree:
/// at a select node the mover picks a child, at an enforce node the opponent
/// picks one, and at a leaf the mover picks an option of that ruleset. The
/// resulting position is again played under the whole expression; no
/// enforcement carries over.
///
/// Every call explores only the positions reachable from its argument. A
/// cycle, a measure that fails to decrease, or more than `node_cap` expanded
/// positions raises TerminationError.
class Evaluator {
public:
    explicit Evaluator(MemoStore& memo, std::size_t node_cap = kDefaultNodeCap) : memo_(memo), node_cap_(node_cap) {}

    /// Boolean game-tree recursion; never consults nimbers.
    Outcome outcome(const Expr& e, const Position& x);
    /// mex of the value set resolved through the tree: union at select
    /// nodes, intersection at enforce nodes. Classical Grundy value on a
    /// single ruleset, enforce nimber on an enforce node.
    Nimber nimber(const Expr& e, const Position& x);

    /// Nimber values the mover can force at x, before the mex.
    std::vector<Nimber> reachable_values(const Expr& e, const Position& x);

    MemoStore& memo() noexcept { return memo_; }
    std::size_t node_cap() const noexcept { return node_cap_; }

private:
    template <class Policy>
    typename Policy::Value evaluate(const Expr& e, const Position& root);

    MemoStore& memo_;
    std::size_t node_cap_;
};

/// Result of a shortness check from one position.
struct ShortReport {
    enum class Status { Ok, Violation, Inconclusive };

    Status status = Status::Ok;
    std::size_t explored = 0;
    /// Violation by cycle: the positions on the cycle, first one repeated implicitly.
    std::vector<Position> cycle;
    /// Violation by measure: an edge along which the measure did not decrease.
    std::optional<std::pair<Position, Position>> bad_edge;
    std::string message;

    bool ok() const noexcept { return status == Status::Ok; }
};

using SuccessorFn = std::function<std::vector<Position>(const Position&)>;

/// Explores the reachable subgraph from x. With a measure witness every edge
/// must strictly decrease the measure; with dag_check the graph must be
/// acyclic. More than `node_cap` positions makes the result inconclusive.
ShortReport explore_short(const Position& x, const SuccessorFn& successors, const TerminationWitness& witness,
                          std::size_t node_cap);

// Core operations on a single ruleset.

std::vector<Position> options(const Ruleset& r, const Position& x);
Outcome outcome(const Ruleset& r, const Position& x, MemoStore& memo);
ShortReport check_short(const Ruleset& r, const Position& x, std::size_t node_cap = kDefaultNodeCap);

// Operator-level operations.

/// Shortness of the selective combination (union of every leaf) from x.
ShortReport check_jointly_short(const Expr& e, const Position& x, std::size_t node_cap = kDefaultNodeCap);
/// Outcome of a select node: ordinary play of the union ruleset.
Outcome selective_outcome(const Expr& select, const Position& x, MemoStore& memo);
/// Game-tree outcome of an enforce node. Independent of enforce nimbers.
Outcome enforce_outcome_direct(const Expr& enforce, const Position& x, MemoStore& memo);

std::string describe(const ShortReport& report);

}  // namespace cgt
