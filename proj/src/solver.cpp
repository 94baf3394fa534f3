#include "cgt/solver.hpp"

#include <algorithm>

#include "cgt/errors.hpp"

namespace cgt {

SumValues evaluate_sum(const SumGame& g, MemoStore& memo) {
    if (g.components.empty()) throw UsageError("a sum needs at least one component");
    Evaluator ev(memo);
    SumValues v;
    for (const auto& c : g.components) {
        v.values.push_back(ev.nimber(c.expr, c.pos));
        v.total ^= v.values.back();
    }
    v.outcome = v.total == 0 ? Outcome::P : Outcome::N;
    return v;
}

Outcome sum_outcome(const SumGame& g, MemoStore& memo) { return evaluate_sum(g, memo).outcome; }

namespace {

std::string sum_key(const SumGame& g) {
    std::vector<std::string> parts;
    parts.reserve(g.components.size());
    for (const auto& c : g.components) parts.push_back(std::to_string(c.expr.id()) + "@" + c.pos.sum_str());
    std::sort(parts.begin(), parts.end());
    std::string key;
    for (const auto& p : parts) key += p + ",";
    return key;
}

template <class LeafFn>
bool resolve(const Expr& node, std::size_t& leaf, const LeafFn& leaf_fn) {
    if (node.is_base()) return leaf_fn(leaf++);
    bool any = false, all = true;
    for (const Expr& c : node.children()) {
        bool v = resolve(c, leaf, leaf_fn);
        any = any || v;
        all = all && v;
    }
    return node.is_select() ? any : all;
}

}  // namespace

bool SumOracle::mover_wins(const SumGame& g) {
    const std::string key = sum_key(g);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    if (on_path_.count(key)) throw TerminationError("sum " + g.render() + " can recur");
    if (++expanded_ > node_cap_)
        throw GuardError("sum oracle refused: more than " + std::to_string(node_cap_) + " sums expanded");
    on_path_.emplace(key, true);

    bool wins = false;
    SumGame next = g;
    for (std::size_t c = 0; c < g.components.size() && !wins; ++c) {
        const auto family = joint_options(g.components[c].expr, g.components[c].pos);
        std::size_t leaf = 0;
        wins = resolve(g.components[c].expr, leaf, [&](std::size_t i) {
            for (const Position& o : family[i]) {
                next.components[c].pos = o;
                const bool reply_wins = mover_wins(next);
                next.components[c].pos = g.components[c].pos;
                if (!reply_wins) return true;
            }
            return false;
        });
    }
    on_path_.erase(key);
    cache_.emplace(key, wins);
    return wins;
}

Outcome SumOracle::outcome(const SumGame& g) {
    if (g.components.empty()) throw UsageError("a sum needs at least one component");
    return mover_wins(g) ? Outcome::N : Outcome::P;
}

Outcome sum_outcome_oracle(const SumGame& g, std::size_t node_cap) { return SumOracle(node_cap).outcome(g); }

std::vector<Nimber> subtree_values(const Expr& root, const Expr& node, const Position& pos, MemoStore& memo) {
    Evaluator ev(memo);
    if (node.is_base()) {
        std::vector<Nimber> vals;
        for (const Position& o : node.ruleset().options(pos)) vals.push_back(ev.nimber(root, o));
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        return vals;
    }
    std::vector<Nimber> acc;
    bool first = true;
    for (const Expr& c : node.children()) {
        auto v = subtree_values(root, c, pos, memo);
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

namespace {

std::optional<Position> smallest_target(const MovePlan& p) {
    std::optional<Position> best = p.target;
    for (const auto& c : p.children) {
        auto t = smallest_target(c);
        if (t && (!best || SmallestFirst{}(*t, *best))) best = t;
    }
    return best;
}

std::optional<MovePlan> build_plan(const Expr& root, const Expr& node, const Position& pos, Nimber needed,
                                   MemoStore& memo) {
    MovePlan plan;
    plan.kind = node.kind();
    if (node.is_base()) {
        plan.ruleset = node.ruleset().name();
        Evaluator ev(memo);
        for (const Position& o : node.ruleset().options(pos))
            if (ev.nimber(root, o) == needed && (!plan.target || SmallestFirst{}(o, *plan.target))) plan.target = o;
        if (!plan.target) return std::nullopt;
        return plan;
    }
    if (node.is_enforce()) {
        for (const Expr& c : node.children()) {
            auto sub = build_plan(root, c, pos, needed, memo);
            if (!sub) return std::nullopt;
            plan.children.push_back(std::move(*sub));
        }
        return plan;
    }
    std::optional<MovePlan> best;
    for (std::size_t i = 0; i < node.children().size(); ++i) {
        auto sub = build_plan(root, node.children()[i], pos, needed, memo);
        if (!sub) continue;
        auto t = smallest_target(*sub), bt = best ? smallest_target(best->children.front()) : std::nullopt;
        if (!best || (t && bt && SmallestFirst{}(*t, *bt))) {
            plan.chosen = i;
            plan.children = {std::move(*sub)};
            best = plan;
        }
    }
    return best;
}

std::size_t winning_replies(const Expr& root, const Expr& node, const Position& pos, Nimber needed,
                            MemoStore& memo) {
    Evaluator ev(memo);
    std::size_t n = 0;
    for (const RulesetPtr& r : node.leaves())
        for (const Position& o : r->options(pos)) n += ev.nimber(root, o) == needed;
    return n;
}

}  // namespace

std::optional<MovePlan> plan_for_value(const SumComponent& c, Nimber needed, MemoStore& memo) {
    return build_plan(c.expr, c.expr, c.pos, needed, memo);
}

MoveAdvice best_move(const SumGame& g, MemoStore& memo) {
    const SumValues v = evaluate_sum(g, memo);
    MoveAdvice advice;
    if (v.total == 0) return advice;
    for (std::size_t i = 0; i < g.components.size(); ++i) {
        const Nimber needed = v.values[i] ^ v.total;
        if (needed >= v.values[i]) continue;
        auto plan = plan_for_value(g.components[i], needed, memo);
        if (!plan) throw InternalError("value " + std::to_string(needed) + " is below the nimber of component " +
                                       std::to_string(i) + " but cannot be reached");
        advice.losing = false;
        advice.component = i;
        advice.needed = needed;
        advice.resulting_nim_sum = v.total ^ v.values[i] ^ needed;
        advice.plan = std::move(*plan);
        return advice;
    }
    throw InternalError("non-zero nim-sum without a reducing component");
}

EnforcementAdvice choose_enforcement(const Expr& root, const Expr& node, const Position& pos, Nimber needed,
                                     MemoStore& memo) {
    if (!node.is_enforce()) throw UsageError("'" + node.render() + "' is not an enforce combination");
    const auto& kids = node.children();
    std::optional<std::size_t> pick;
    std::size_t pick_options = 0;
    for (std::size_t i = 0; i < kids.size(); ++i) {
        auto vals = subtree_values(root, kids[i], pos, memo);
        if (std::binary_search(vals.begin(), vals.end(), needed)) continue;
        std::size_t n = 0;
        for (const RulesetPtr& r : kids[i].leaves()) n += r->options(pos).size();
        if (!pick || n < pick_options) {
            pick = i;
            pick_options = n;
        }
    }
    if (pick) return {*pick, true};

    EnforcementAdvice fallback{0, false};
    std::size_t fewest = 0;
    for (std::size_t i = 0; i < kids.size(); ++i) {
        const std::size_t n = winning_replies(root, kids[i], pos, needed, memo);
        if (i == 0 || n < fewest) {
            fallback.child = i;
            fewest = n;
        }
    }
    return fallback;
}

EnforcementAdvice best_enforcement(const SumGame& g, std::size_t component, MemoStore& memo) {
    if (component >= g.components.size()) throw UsageError("no component " + std::to_string(component));
    const SumComponent& c = g.components[component];
    if (!c.expr.is_enforce()) throw UsageError("component '" + c.expr.render() + "' is not an enforce combination");
    const SumValues v = evaluate_sum(g, memo);
    const Nimber needed = v.total ^ v.values[component];
    return choose_enforcement(c.expr, c.expr, c.pos, needed, memo);
}

std::string render_plan(const MovePlan& plan) {
    switch (plan.kind) {
        case Expr::Kind::Base:
            return plan.ruleset + " -> " + plan.target->str();
        case Expr::Kind::Select:
            return render_plan(plan.children.front());
        case Expr::Kind::Enforce: {
            std::string s = "{";
            for (std::size_t i = 0; i < plan.children.size(); ++i) {
                if (i) s += ", ";
                s += render_plan(plan.children[i]);
            }
            return s + "}";
        }
    }
    return {};
}

}  // namespace cgt
