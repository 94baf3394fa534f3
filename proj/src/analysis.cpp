#include "cgt/analysis.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <unordered_set>

#include "cgt/errors.hpp"
#include "cgt/rulesets.hpp"

namespace cgt {

Nimber mex(std::vector<Nimber> values) {
    std::sort(values.begin(), values.end());
    Nimber m = 0;
    for (Nimber v : values) {
        if (v == m)
            ++m;
        else if (v > m)
            break;
    }
    return m;
}

Nimber nim_sum(const std::vector<Nimber>& values) {
    Nimber s = 0;
    for (Nimber v : values) s ^= v;
    return s;
}

Nimber grundy(const Expr& e, const Position& x, MemoStore& memo) {
    if (e.contains_enforce())
        throw UsageError("'" + e.render() + "' contains an enforce operator; use the enforce nimber instead");
    return Evaluator(memo).nimber(e, x);
}

Nimber grundy(const RulesetPtr& r, const Position& x, MemoStore& memo) { return grundy(Expr::base(r), x, memo); }

Nimber enforce_grundy(const Expr& e, const Position& x, MemoStore& memo) {
    if (!e.is_enforce()) throw UsageError("'" + e.render() + "' is not an enforce combination");
    return Evaluator(memo).nimber(e, x);
}

Region square_region(std::size_t dimension, Coord n) {
    if (n == 0) throw UsageError("region size must be positive");
    Region r;
    r.positions = box_region(dimension, n, dimension == 1 ? 1 : n);
    r.label = dimension == 1 ? "{0.." + std::to_string(n - 1) + "}" : "[0," + std::to_string(n - 1) + "]²";
    return r;
}

std::vector<Position> option_closure(const std::vector<Position>& seed, const std::vector<Expr>& exprs,
                                     std::size_t node_cap) {
    std::unordered_set<PositionKey> seen;
    std::vector<Position> out;
    std::deque<Position> queue;
    for (const Position& p : seed)
        if (seen.insert(PositionKey::of(p)).second) {
            out.push_back(p);
            queue.push_back(p);
        }
    while (!queue.empty()) {
        Position p = std::move(queue.front());
        queue.pop_front();
        for (const Expr& e : exprs)
            for (Position& q : union_options(e, p))
                if (seen.insert(PositionKey::of(q)).second) {
                    if (out.size() >= node_cap)
                        throw TerminationError("option closure exceeded " + std::to_string(node_cap) + " positions");
                    out.push_back(q);
                    queue.push_back(std::move(q));
                }
    }
    std::sort(out.begin(), out.end(), SmallestFirst{});
    return out;
}

namespace {

std::vector<Position> smallest_first(std::vector<Position> v) {
    std::sort(v.begin(), v.end(), SmallestFirst{});
    return v;
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

DirectionCheck direction(const Expr& dom, const Expr& other, const std::vector<Position>& closure,
                         MemoStore& memo) {
    Evaluator ev(memo);
    const Expr enforced = Expr::enforce({dom, other});
    DirectionCheck d;
    for (const Position& x : closure) {
        Outcome with = ev.outcome(enforced, x), alone = ev.outcome(dom, x);
        if (with != alone) {
            d.holds = false;
            d.witness = x;
            d.witness_enforced = with;
            d.witness_alone = alone;
            break;
        }
    }
    d.property1 = property1(dom, other, closure, memo);
    if (d.property1.holds != d.holds)
        throw InternalError("Property 1 and the direct outcome comparison disagree for '" + dom.render() +
                            "' over '" + other.render() + "'");
    return d;
}

}  // namespace

Property1Result property1(const Expr& a, const Expr& b, const std::vector<Position>& region, MemoStore& memo) {
    Evaluator ev(memo);
    Property1Result res;
    for (const Position& x : smallest_first(region)) {
        if (ev.outcome(a, x) == Outcome::P) continue;
        const auto family = joint_options(b, x);
        std::size_t leaf = 0;
        const bool forced = resolve(b, leaf, [&](std::size_t i) {
            return std::any_of(family[i].begin(), family[i].end(),
                               [&](const Position& o) { return ev.outcome(a, o) == Outcome::P; });
        });
        if (!forced) {
            res.holds = false;
            res.counterexample = x;
            res.b_options = union_options(b, x);
            return res;
        }
    }
    return res;
}

std::string relation_name(Relation r) {
    switch (r) {
        case Relation::ADominatesB:
            return "A_dominates_B";
        case Relation::BDominatesA:
            return "B_dominates_A";
        case Relation::Similar:
            return "similar";
        case Relation::Confused:
            return "confused";
    }
    return {};
}

DominationReport classify_domination(const Expr& a, const Expr& b, const Region& region, MemoStore& memo) {
    DominationReport r;
    r.a = a.render();
    r.b = b.render();
    r.region_label = region.label;
    r.region_size = region.positions.size();
    const auto closure = option_closure(region.positions, {a, b});
    r.closure_size = closure.size();
    r.a_over_b = direction(a, b, closure, memo);
    r.b_over_a = direction(b, a, closure, memo);
    if (r.a_over_b.holds && r.b_over_a.holds)
        r.relation = Relation::Similar;
    else if (r.a_over_b.holds)
        r.relation = Relation::ADominatesB;
    else if (r.b_over_a.holds)
        r.relation = Relation::BDominatesA;
    else
        r.relation = Relation::Confused;
    return r;
}

const std::vector<Law>& all_laws() {
    static const std::vector<Law> laws = {Law::Absorption1,      Law::Absorption2,    Law::Distrib1,
                                          Law::Distrib2,         Law::IdentityEEnforce, Law::AbsorbOEnforce,
                                          Law::IdentityOSelect, Law::AbsorbESelect};
    return laws;
}

std::vector<std::vector<Expr>> sample_operands(std::uint64_t seed, std::size_t count, std::size_t dimension) {
    std::vector<Expr> pool;
    for (const auto& name : builtin_names()) {
        if (is_dimension_free(name)) continue;
        auto r = make_builtin(name, dimension);
        if (r->dimension() == dimension) pool.push_back(Expr::base(r));
    }
    if (pool.empty()) throw UsageError("no builtins of dimension " + std::to_string(dimension));
    std::mt19937_64 rng(seed);
    std::vector<std::vector<Expr>> out;
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<Expr> t;
        for (int k = 0; k < 3; ++k) t.push_back(pool[rng() % pool.size()]);
        out.push_back(std::move(t));
    }
    return out;
}

std::string law_name(Law law) {
    switch (law) {
        case Law::Absorption1:
            return "absorption1";
        case Law::Absorption2:
            return "absorption2";
        case Law::Distrib1:
            return "distrib1";
        case Law::Distrib2:
            return "distrib2";
        case Law::IdentityEEnforce:
            return "identityE_enforce";
        case Law::AbsorbOEnforce:
            return "absorbO_enforce";
        case Law::IdentityOSelect:
            return "identityO_select";
        case Law::AbsorbESelect:
            return "absorbE_select";
    }
    return {};
}

std::optional<Law> law_from_name(std::string_view name) {
    for (Law l : all_laws())
        if (law_name(l) == name) return l;
    return std::nullopt;
}

std::size_t law_arity(Law law) {
    switch (law) {
        case Law::Absorption1:
        case Law::Absorption2:
            return 2;
        case Law::Distrib1:
        case Law::Distrib2:
            return 3;
        default:
            return 1;
    }
}

LawResult check_law(Law law, const std::vector<Expr>& ops, const Region& region, MemoStore& memo) {
    if (ops.size() != law_arity(law))
        throw UsageError(law_name(law) + " takes " + std::to_string(law_arity(law)) + " operands, got " +
                         std::to_string(ops.size()));
    const std::size_t dim = ops.front().dimension();
    const Expr e = Expr::base(make_identity_e(dim));
    const Expr o = Expr::base(make_absorbing_o(dim));
    auto E = [](Expr x, Expr y) { return Expr::enforce({std::move(x), std::move(y)}); };
    auto S = [](Expr x, Expr y) { return Expr::select({std::move(x), std::move(y)}); };

    std::optional<Expr> lhs, rhs;
    switch (law) {
        case Law::Absorption1:
            lhs = E(S(ops[0], ops[1]), ops[0]);
            rhs = ops[0];
            break;
        case Law::Absorption2:
            lhs = S(E(ops[0], ops[1]), ops[0]);
            rhs = ops[0];
            break;
        case Law::Distrib1:
            lhs = E(S(ops[0], ops[1]), ops[2]);
            rhs = S(E(ops[0], ops[2]), E(ops[1], ops[2]));
            break;
        case Law::Distrib2:
            lhs = S(E(ops[0], ops[1]), ops[2]);
            rhs = E(S(ops[0], ops[2]), S(ops[1], ops[2]));
            break;
        case Law::IdentityEEnforce:
            lhs = E(ops[0], e);
            rhs = ops[0];
            break;
        case Law::AbsorbOEnforce:
            lhs = E(ops[0], o);
            rhs = o;
            break;
        case Law::IdentityOSelect:
            lhs = S(ops[0], o);
            rhs = ops[0];
            break;
        case Law::AbsorbESelect:
            lhs = S(ops[0], e);
            rhs = e;
            break;
    }

    LawResult r;
    r.law = law;
    r.lhs = lhs->render();
    r.rhs = rhs->render();
    r.region_label = region.label;
    Evaluator ev(memo);
    for (const Position& x : smallest_first(region.positions)) {
        ++r.checked;
        Outcome l = ev.outcome(*lhs, x), rr = ev.outcome(*rhs, x);
        if (l != rr) {
            r.pass = false;
            r.counterexample = x;
            r.lhs_value = l;
            r.rhs_value = rr;
            break;
        }
    }
    return r;
}

StrongDominationResult falsify_strong_domination(const Expr& a, const Expr& b, const std::vector<Expr>& candidates,
                                                 const Region& region, MemoStore& memo) {
    StrongDominationResult r;
    Evaluator ev(memo);
    const auto positions = smallest_first(region.positions);
    for (const Expr& c : candidates) {
        if (c.dimension() != a.dimension()) continue;
        ++r.candidates_tried;
        const Expr abc = Expr::enforce({a, b, c});
        const Expr ac = Expr::enforce({a, c});
        for (const Position& x : positions) {
            Outcome with = ev.outcome(abc, x), without = ev.outcome(ac, x);
            if (with != without) {
                r.found = true;
                r.candidate = c.render();
                r.position = x;
                r.with_b = with;
                r.without_b = without;
                return r;
            }
        }
    }
    return r;
}

std::vector<Expr> default_candidate_pool(std::size_t dimension) {
    std::vector<Expr> base;
    for (const auto& name : builtin_names()) {
        auto r = make_builtin(name, dimension);
        if (r->dimension() == dimension) base.push_back(Expr::base(r));
    }
    std::vector<Expr> pool = base;
    for (std::size_t i = 0; i < base.size(); ++i)
        for (std::size_t j = i + 1; j < base.size(); ++j) {
            pool.push_back(Expr::enforce({base[i], base[j]}));
            pool.push_back(Expr::select({base[i], base[j]}));
        }
    return pool;
}

ThreeCycleResult three_cycle_check(const Expr& a, const Expr& b, const Expr& c, const Region& region,
                                   MemoStore& memo) {
    ThreeCycleResult r;
    r.ab = classify_domination(a, b, region, memo);
    r.bc = classify_domination(b, c, region, memo);
    r.ca = classify_domination(c, a, region, memo);
    r.precondition = r.ab.a_over_b.holds && r.bc.a_over_b.holds && r.ca.a_over_b.holds;
    if (!r.precondition) return r;
    Evaluator ev(memo);
    for (const Position& x : region.positions) {
        const Outcome oa = ev.outcome(a, x);
        if (ev.outcome(b, x) != oa || ev.outcome(c, x) != oa)
            throw InternalError("domination cycle with differing outcomes at " + x.str());
    }
    r.similar = true;
    return r;
}

NimberComparison compare_nimbers(const Expr& a, const Expr& b, const Region& region, MemoStore& memo) {
    NimberComparison r;
    const Expr enforced = Expr::enforce({a, b});
    r.enforced = enforced.render();
    r.alone = a.render();
    r.region_label = region.label;
    Evaluator ev(memo);
    for (const Position& x : smallest_first(region.positions)) {
        ++r.cells;
        if (ev.nimber(enforced, x) != ev.nimber(a, x)) {
            if (!r.first_mismatch) r.first_mismatch = x;
            ++r.mismatches;
        }
    }
    return r;
}

namespace {

nlohmann::json coords(const Position& p) { return std::vector<Coord>(p.coords().begin(), p.coords().end()); }

nlohmann::json coords(const std::optional<Position>& p) { return p ? coords(*p) : nlohmann::json(nullptr); }

nlohmann::json to_json(const DirectionCheck& d) {
    nlohmann::json j;
    j["holds"] = d.holds;
    j["witness"] = coords(d.witness);
    if (d.witness) {
        j["outcome_enforced"] = std::string(1, outcome_letter(d.witness_enforced));
        j["outcome_alone"] = std::string(1, outcome_letter(d.witness_alone));
    }
    j["property1_holds"] = d.property1.holds;
    j["property1_witness"] = coords(d.property1.counterexample);
    if (d.property1.counterexample) {
        nlohmann::json opts = nlohmann::json::array();
        for (const auto& p : d.property1.b_options) opts.push_back(coords(p));
        j["property1_options"] = opts;
    }
    return j;
}

}  // namespace

nlohmann::json to_json(const DominationReport& r) {
    return {{"a", r.a},
            {"b", r.b},
            {"relation", relation_name(r.relation)},
            {"region", r.region_label},
            {"region_size", r.region_size},
            {"closure_size", r.closure_size},
            {"a_dominates_b", to_json(r.a_over_b)},
            {"b_dominates_a", to_json(r.b_over_a)}};
}

nlohmann::json to_json(const LawResult& r) {
    nlohmann::json j = {{"law", law_name(r.law)}, {"lhs", r.lhs},         {"rhs", r.rhs},
                        {"region", r.region_label}, {"checked", r.checked}, {"pass", r.pass},
                        {"counterexample", coords(r.counterexample)}};
    if (r.counterexample) {
        j["lhs_outcome"] = std::string(1, outcome_letter(r.lhs_value));
        j["rhs_outcome"] = std::string(1, outcome_letter(r.rhs_value));
    }
    return j;
}

nlohmann::json to_json(const StrongDominationResult& r) {
    nlohmann::json j = {{"found", r.found}, {"candidates_tried", r.candidates_tried}};
    if (r.found) {
        j["candidate"] = r.candidate;
        j["position"] = coords(r.position);
        j["outcome_with_b"] = std::string(1, outcome_letter(r.with_b));
        j["outcome_without_b"] = std::string(1, outcome_letter(r.without_b));
    }
    return j;
}

nlohmann::json to_json(const NimberComparison& r) {
    return {{"enforced", r.enforced},   {"alone", r.alone},           {"region", r.region_label},
            {"cells", r.cells},         {"mismatches", r.mismatches}, {"first_mismatch", coords(r.first_mismatch)}};
}

}  // namespace cgt
