#include "cgt/report.hpp"

#include <sstream>

#include "cgt/errors.hpp"

namespace cgt {

std::optional<GridAnalysis> grid_analysis_from_name(std::string_view name) {
    if (name == "outcome") return GridAnalysis::Outcome;
    if (name == "grundy") return GridAnalysis::Grundy;
    if (name == "enforce_grundy") return GridAnalysis::EnforceGrundy;
    return std::nullopt;
}

std::optional<GridFormat> grid_format_from_name(std::string_view name) {
    if (name == "ascii") return GridFormat::Ascii;
    if (name == "csv") return GridFormat::Csv;
    if (name == "json") return GridFormat::Json;
    return std::nullopt;
}

std::string grid_analysis_name(GridAnalysis a) {
    switch (a) {
        case GridAnalysis::Outcome:
            return "outcome";
        case GridAnalysis::Grundy:
            return "grundy";
        case GridAnalysis::EnforceGrundy:
            return "enforce_grundy";
    }
    return {};
}

GridResult emit_grid(const GridRequest& req, MemoStore& memo, std::size_t cell_cap) {
    const Expr& e = req.expr;
    if (req.width == 0 || req.height == 0) throw UsageError("grid size must be positive");
    if (e.dimension() > 2) throw UsageError("grids need a 1- or 2-dimensional expression");
    if (e.dimension() == 1 && req.height != 1)
        throw UsageError("'" + e.render() + "' is 1-dimensional; use a height of 1");
    if (req.width > cell_cap / req.height)
        throw GuardError("grid of " + std::to_string(req.width) + "x" + std::to_string(req.height) +
                         " exceeds the cap of " + std::to_string(cell_cap) + " cells");

    GridResult out;
    GridAnalysis analysis = req.analysis;
    if (analysis == GridAnalysis::Grundy && e.contains_enforce())
        throw UsageError("'" + e.render() + "' contains an enforce operator; use enforce_grundy");
    if (analysis == GridAnalysis::EnforceGrundy && !e.is_enforce()) {
        out.note = "'" + e.render() + "' is not an enforce combination; showing nimbers";
        analysis = GridAnalysis::Grundy;
    }

    Evaluator ev(memo);
    std::vector<std::vector<std::string>> cells(req.height);
    std::vector<std::vector<nlohmann::json>> json_rows(req.height);
    for (Coord y = 0; y < req.height; ++y)
        for (Coord x = 0; x < req.width; ++x) {
            const Position p = e.dimension() == 1 ? Position{x} : Position{x, y};
            if (analysis == GridAnalysis::Outcome) {
                std::string v(1, outcome_letter(ev.outcome(e, p)));
                json_rows[y].push_back(v);
                cells[y].push_back(std::move(v));
            } else {
                const Nimber v = ev.nimber(e, p);
                json_rows[y].push_back(v);
                cells[y].push_back(std::to_string(v));
            }
        }

    std::ostringstream s;
    switch (req.format) {
        case GridFormat::Csv:
            for (const auto& row : cells) {
                for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << row[i];
                s << '\n';
            }
            break;
        case GridFormat::Ascii: {
            std::size_t w = std::to_string(std::max(req.width, req.height) - 1).size();
            for (const auto& row : cells)
                for (const auto& c : row) w = std::max(w, c.size());
            const std::string corner = "y\\x";
            auto pad = [](const std::string& t, std::size_t n) { return std::string(n - std::min(n, t.size()), ' ') + t; };
            s << pad(corner, std::max(corner.size(), w));
            for (Coord x = 0; x < req.width; ++x) s << ' ' << pad(std::to_string(x), w);
            s << '\n';
            for (Coord y = 0; y < req.height; ++y) {
                s << pad(std::to_string(y), std::max(corner.size(), w));
                for (const auto& c : cells[y]) s << ' ' << pad(c, w);
                s << '\n';
            }
            break;
        }
        case GridFormat::Json: {
            nlohmann::json j = {{"expr", e.render()},
                                {"analysis", grid_analysis_name(analysis)},
                                {"width", req.width},
                                {"height", req.height},
                                {"origin", "top-left"},
                                {"cell", "rows[y][x] is the value at position (x,y)"},
                                {"rows", json_rows}};
            if (!out.note.empty()) j["note"] = out.note;
            s << j.dump(2) << '\n';
            break;
        }
    }
    out.text = s.str();
    return out;
}

std::string format_position(const Position& p) { return p.dimension() == 1 ? std::to_string(p[0]) : p.str(); }

namespace {

std::string format_set(const std::vector<Position>& ps) {
    std::string s = "{";
    for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + format_position(ps[i]);
    return s + "}";
}

std::string letter(Outcome o) { return std::string(1, outcome_letter(o)); }

void direction_lines(std::ostream& s, const std::string& dom, const std::string& other, const DirectionCheck& d) {
    if (d.holds) {
        s << dom << " ⊢ " << other << ": holds; Property 1 agrees\n";
        return;
    }
    const Position& w = *d.witness;
    s << dom << " ⊬ " << other << ": at " << format_position(w) << " O(" << dom << " . " << other
      << ") = " << letter(d.witness_enforced) << " but O(" << dom << ") = " << letter(d.witness_alone) << '\n';
    const Position& x = *d.property1.counterexample;
    const std::string arg = x.dimension() == 1 ? "(" + format_position(x) + ")" : x.str();
    s << "  Property 1 fails at " << format_position(x) << ": O(" << dom << ") = N there, f_" << other << arg
      << " = " << format_set(d.property1.b_options);
    if (d.property1.b_options.empty())
        s << " is empty\n";
    else
        s << " and " << dom << " gives N at every one of them\n";
}

}  // namespace

std::string format_domination(const DominationReport& r) {
    std::ostringstream s;
    const std::string on = " on " + r.region_label;
    switch (r.relation) {
        case Relation::Similar:
            s << r.a << " ≃ " << r.b << on << '\n';
            break;
        case Relation::ADominatesB:
            s << r.a << " ⊢ " << r.b << on << '\n';
            break;
        case Relation::BDominatesA:
            s << r.b << " ⊢ " << r.a << on << '\n';
            break;
        case Relation::Confused:
            s << r.a << " ∥ " << r.b << " (confused)" << on << '\n';
            break;
    }
    s << "checked " << r.closure_size << " positions: the region (" << r.region_size
      << ") and everything reachable from it\n";
    direction_lines(s, r.a, r.b, r.a_over_b);
    direction_lines(s, r.b, r.a, r.b_over_a);
    return s.str();
}

std::string format_law(const LawResult& r) {
    std::ostringstream s;
    s << law_name(r.law) << ": " << r.lhs << "  ~  " << r.rhs << " on " << r.region_label << ": ";
    if (r.pass)
        s << "pass (" << r.checked << " positions)\n";
    else
        s << "FAIL at " << format_position(*r.counterexample) << " (" << letter(r.lhs_value) << " vs "
          << letter(r.rhs_value) << ")\n";
    return s.str();
}

std::string format_three_cycle(const ThreeCycleResult& r) {
    std::ostringstream s;
    if (!r.precondition) {
        s << "precondition failed: the three rulesets do not dominate in a cycle on " << r.ab.region_label << '\n';
    } else {
        s << "similar confirmed: " << r.ab.a << ", " << r.bc.a << " and " << r.ca.a
          << " have equal outcomes on " << r.ab.region_label << '\n';
    }
    for (const auto* d : {&r.ab, &r.bc, &r.ca}) direction_lines(s, d->a, d->b, d->a_over_b);
    return s.str();
}

std::string format_strong(const std::string& a, const std::string& b, const StrongDominationResult& r,
                          const std::string& region_label) {
    std::ostringstream s;
    if (r.found)
        s << "not strong: with C = " << r.candidate << ", O(" << a << " . " << b << " . C) = " << letter(r.with_b)
          << " but O(" << a << " . C) = " << letter(r.without_b) << " at " << format_position(*r.position) << '\n';
    else
        s << "no counterexample among " << r.candidates_tried << " candidates on " << region_label
          << " (this does not prove strong domination)\n";
    return s.str();
}

std::string format_nimber_comparison(const NimberComparison& r) {
    std::ostringstream s;
    s << "nimbers of " << r.enforced << " vs " << r.alone << " on " << r.region_label << ": ";
    if (r.mismatches == 0)
        s << "equal on all " << r.cells << " positions\n";
    else
        s << r.mismatches << " of " << r.cells << " differ, first at " << format_position(*r.first_mismatch)
          << '\n';
    return s.str();
}

SolveReport solve_sum(const SumGame& g, MemoStore& memo) {
    SolveReport rep;
    rep.values = evaluate_sum(g, memo);
    rep.advice = best_move(g, memo);
    std::ostringstream s;
    for (std::size_t i = 0; i < g.components.size(); ++i) {
        const auto& c = g.components[i];
        s << "component " << i << ": " << c.expr.render() << " at " << format_position(c.pos) << ", "
          << (c.expr.is_enforce() ? "enforce nimber " : "nimber ") << rep.values.values[i] << '\n';
    }
    s << "nim-sum: " << rep.values.total << '\n';
    s << "outcome: " << outcome_letter(rep.values.outcome) << '\n';
    if (rep.advice.losing) {
        s << "advice: none, every move leaves a non-zero nim-sum\n";
    } else {
        const auto& plan = rep.advice.plan;
        s << "advice: component " << rep.advice.component;
        if (plan.kind == Expr::Kind::Enforce)
            s << ", reply table " << render_plan(plan);
        else
            s << ", " << render_plan(plan);
        s << " (to value " << rep.advice.needed << ")\n";
    }
    rep.text = s.str();
    return rep;
}

nlohmann::json to_json(const MovePlan& plan) {
    nlohmann::json j;
    switch (plan.kind) {
        case Expr::Kind::Base:
            j = {{"ruleset", plan.ruleset}, {"target", std::vector<Coord>(plan.target->coords().begin(),
                                                                          plan.target->coords().end())}};
            break;
        case Expr::Kind::Select:
            j = {{"select", plan.chosen}, {"plan", to_json(plan.children.front())}};
            break;
        case Expr::Kind::Enforce: {
            nlohmann::json replies = nlohmann::json::array();
            for (const auto& c : plan.children) replies.push_back(to_json(c));
            j = {{"replies", replies}};
            break;
        }
    }
    return j;
}

nlohmann::json to_json(const SumGame& g, const SolveReport& r) {
    nlohmann::json comps = nlohmann::json::array();
    for (std::size_t i = 0; i < g.components.size(); ++i) {
        const auto& c = g.components[i];
        comps.push_back({{"expr", c.expr.render()},
                         {"position", std::vector<Coord>(c.pos.coords().begin(), c.pos.coords().end())},
                         {"kind", c.expr.is_enforce() ? "enforce_nimber" : "nimber"},
                         {"value", r.values.values[i]}});
    }
    nlohmann::json j = {{"sum", g.render()},
                        {"components", comps},
                        {"nim_sum", r.values.total},
                        {"outcome", std::string(1, outcome_letter(r.values.outcome))}};
    if (r.advice.losing)
        j["advice"] = nullptr;
    else
        j["advice"] = {{"component", r.advice.component},
                       {"value", r.advice.needed},
                       {"resulting_nim_sum", r.advice.resulting_nim_sum},
                       {"plan", to_json(r.advice.plan)}};
    return j;
}

}  // namespace cgt
