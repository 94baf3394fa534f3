#include "cgt/expr.hpp"

#include <algorithm>
#include <cstdio>

#include "cgt/errors.hpp"

namespace cgt {

struct Expr::Node {
    Kind kind = Kind::Base;
    RulesetPtr ruleset;
    std::vector<Expr> children;
    std::size_t dimension = 0;
    std::string key;
    std::uint64_t id = 0;
    std::vector<RulesetPtr> leaves;
    bool has_enforce = false;
    // Canonical operand keys after flattening same-kind children, sorted.
    std::vector<std::string> flat_keys;
};

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

Expr Expr::base(RulesetPtr ruleset) {
    if (!ruleset) throw UsageError("null ruleset");
    auto node = std::make_shared<Node>();
    node->kind = Kind::Base;
    node->dimension = ruleset->dimension();
    node->key = ruleset->name() + "#" + hex(fnv1a64(ruleset->digest())).substr(0, 8);
    node->id = fnv1a64(node->key);
    node->leaves = {ruleset};
    node->ruleset = std::move(ruleset);
    return Expr(std::move(node));
}

Expr Expr::enforce(std::vector<Expr> children) { return make_operator(Kind::Enforce, std::move(children)); }

Expr Expr::select(std::vector<Expr> children) { return make_operator(Kind::Select, std::move(children)); }

Expr Expr::make_operator(Kind kind, std::vector<Expr> children) {
    const char* op = kind == Kind::Enforce ? "enforce" : "select";
    if (children.size() < 2) throw UsageError(std::string(op) + " needs at least two rulesets");
    auto node = std::make_shared<Node>();
    node->kind = kind;
    node->dimension = children.front().dimension();
    node->has_enforce = kind == Kind::Enforce;
    for (const Expr& c : children) {
        if (c.dimension() != node->dimension)
            throw UsageError(std::string(op) + " combines boards of dimension " + std::to_string(node->dimension) +
                             " and " + std::to_string(c.dimension()));
        node->leaves.insert(node->leaves.end(), c.leaves().begin(), c.leaves().end());
        node->has_enforce = node->has_enforce || c.contains_enforce();
        if (c.kind() == kind)
            node->flat_keys.insert(node->flat_keys.end(), c.node_->flat_keys.begin(), c.node_->flat_keys.end());
        else
            node->flat_keys.push_back(c.canonical_key());
    }
    std::sort(node->flat_keys.begin(), node->flat_keys.end());
    node->key = (kind == Kind::Enforce ? "E(" : "S(");
    for (std::size_t i = 0; i < node->flat_keys.size(); ++i) {
        if (i) node->key += ',';
        node->key += node->flat_keys[i];
    }
    node->key += ')';
    node->id = fnv1a64(node->key);
    node->children = std::move(children);
    return Expr(std::move(node));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }
const std::vector<Expr>& Expr::children() const noexcept { return node_->children; }

const Ruleset& Expr::ruleset() const { return *ruleset_ptr(); }

const RulesetPtr& Expr::ruleset_ptr() const {
    if (!is_base()) throw UsageError("expression '" + render() + "' is not a single ruleset");
    return node_->ruleset;
}

std::size_t Expr::dimension() const noexcept { return node_->dimension; }
std::uint64_t Expr::id() const noexcept { return node_->id; }
const std::string& Expr::canonical_key() const noexcept { return node_->key; }
const std::vector<RulesetPtr>& Expr::leaves() const noexcept { return node_->leaves; }
bool Expr::contains_enforce() const noexcept { return node_->has_enforce; }

std::string Expr::render() const {
    if (is_base()) return node_->ruleset->name();
    const bool enf = is_enforce();
    std::string out;
    for (std::size_t i = 0; i < children().size(); ++i) {
        const Expr& c = children()[i];
        if (i) out += enf ? " . " : " +s ";
        // `.` binds tighter than `+s`, so only a select operand of an enforce
        // or a same-kind nest needs parentheses.
        const bool parens = !c.is_base() && (c.kind() == kind() || (enf && c.is_select()));
        out += parens ? "(" + c.render() + ")" : c.render();
    }
    return out;
}

Expr canonicalize(const Expr& e) {
    if (e.is_base()) return e;
    std::vector<Expr> operands;
    auto gather = [&](auto&& self, const Expr& node) -> void {
        for (const Expr& c : node.children()) {
            if (c.kind() == e.kind())
                self(self, c);
            else
                operands.push_back(canonicalize(c));
        }
    };
    gather(gather, e);
    std::stable_sort(operands.begin(), operands.end(),
                     [](const Expr& a, const Expr& b) { return a.canonical_key() < b.canonical_key(); });
    return e.is_enforce() ? Expr::enforce(std::move(operands)) : Expr::select(std::move(operands));
}

std::vector<std::vector<Position>> joint_options(const Expr& e, const Position& x) {
    require_dimension(x, e.dimension(), "expression '" + e.render() + "'");
    std::vector<std::vector<Position>> family;
    family.reserve(e.leaves().size());
    for (const RulesetPtr& r : e.leaves()) family.push_back(r->options(x));
    return family;
}

std::vector<Position> union_options(const Expr& e, const Position& x) {
    std::vector<Position> all;
    for (auto& set : joint_options(e, x)) all.insert(all.end(), set.begin(), set.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

TerminationWitness joint_witness(const Expr& e) {
    const auto& leaves = e.leaves();
    const TerminationWitness& first = leaves.front()->witness();
    if (!first.is_measure()) return TerminationWitness::dag_check();
    for (const RulesetPtr& r : leaves)
        if (!r->witness().is_measure() || r->witness().measure_name != first.measure_name)
            return TerminationWitness::dag_check();
    return first;
}

RulesetPtr union_ruleset(const Expr& e) {
    if (e.is_base()) return e.ruleset_ptr();
    Expr captured = e;
    return std::make_shared<Ruleset>(
        "union(" + e.render() + ")", e.dimension(),
        [captured](const Position& x, std::vector<Position>& out) {
            for (const RulesetPtr& r : captured.leaves()) {
                auto opts = r->options(x);
                out.insert(out.end(), opts.begin(), opts.end());
            }
        },
        joint_witness(e), "union:" + e.canonical_key());
}

}  // namespace cgt
