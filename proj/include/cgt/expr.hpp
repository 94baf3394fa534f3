#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "cgt/ruleset.hpp"

namespace cgt {

/// Composition tree of rulesets under the enforce and selective operators.
///
/// Nodes are immutable and shared. Construction keeps the given shape;
/// canonicalize() flattens associative nests and sorts commutative children.
/// id() is always the id of the canonical form, so differently written but
/// algebraically identical expressions share memo entries.
class Expr {
public:
    enum class Kind { Base, Enforce, Select };

    static Expr base(RulesetPtr ruleset);
    /// At least two children of one board dimension.
    static Expr enforce(std::vector<Expr> children);
    static Expr select(std::vector<Expr> children);

    Kind kind() const noexcept;
    bool is_base() const noexcept { return kind() == Kind::Base; }
    bool is_enforce() const noexcept { return kind() == Kind::Enforce; }
    bool is_select() const noexcept { return kind() == Kind::Select; }

    const std::vector<Expr>& children() const noexcept;
    /// Base nodes only.
    const Ruleset& ruleset() const;
    const RulesetPtr& ruleset_ptr() const;

    std::size_t dimension() const noexcept;
    std::uint64_t id() const noexcept;
    /// Canonical key: names plus digests, children flattened and sorted.
    const std::string& canonical_key() const noexcept;
    /// Leaves in depth-first order; joint_options is indexed the same way.
    const std::vector<RulesetPtr>& leaves() const noexcept;
    bool contains_enforce() const noexcept;

    /// Text in the expression grammar, preserving this node's own shape.
    std::string render() const;

    friend bool same_canonical(const Expr& a, const Expr& b) { return a.canonical_key() == b.canonical_key(); }

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Expr make_operator(Kind kind, std::vector<Expr> children);

    std::shared_ptr<const Node> node_;
};

/// Flattened, child-sorted form of `e`.
Expr canonicalize(const Expr& e);

/// One option set per leaf of `e` (in Expr::leaves() order).
std::vector<std::vector<Position>> joint_options(const Expr& e, const Position& x);
/// Union of the joint family: the option set of the selective combination.
std::vector<Position> union_options(const Expr& e, const Position& x);
/// The explicit union ruleset of all leaves of `e`.
RulesetPtr union_ruleset(const Expr& e);
/// Shared measure of all leaves, or a dag_check witness when they differ.
TerminationWitness joint_witness(const Expr& e);

std::uint64_t fnv1a64(std::string_view text);

}  // namespace cgt
