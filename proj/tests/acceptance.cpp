// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "cgt/analysis.hpp"
#include "cgt/parse.hpp"
#include "cgt/report.hpp"
#include "cgt/solver.hpp"
#include "checks.hpp"
#include "oracles.hpp"

using namespace cgt;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void criterion(int n, const char* title, const std::function<Verdict()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!v.pass) ++failures;
    std::printf("%s criterion %d: %s (%s; %.2fs)\n", v.pass ? "PASS" : "FAIL", n, title, v.detail.c_str(), secs);
    std::fflush(stdout);
}

Verdict table1() {
    MemoStore memo;
    Evaluator ev(memo);
    std::size_t cells = 0, bad = 0;
    for (const auto& [text, row] : oracle::table1()) {
        const Expr e = parse_expr(text, Catalog{}, 1);
        for (Coord x = 0; x <= 10; ++x, ++cells)
            bad += outcome_letter(ev.outcome(e, {x})) != row[x];
    }
    return {bad == 0 && cells == 66, std::to_string(cells) + " cells, " + std::to_string(bad) + " mismatches"};
}

Verdict grids() {
    MemoStore memo;
    std::size_t n = 0;
    std::string bad;
    for (const auto& f : oracle::grid_manifest()) {
        GridRequest req{parse_expr(f.expr)};
        req.analysis = *grid_analysis_from_name(f.analysis);
        req.width = f.width;
        req.height = f.height;
        req.format = GridFormat::Csv;
        if (emit_grid(req, memo).text != oracle::fixture(f.file)) bad += " " + f.file;
        ++n;
    }
    return {bad.empty() && n > 0, std::to_string(n) + " fixtures" + (bad.empty() ? "" : ", differ:" + bad)};
}

Verdict example18() {
    MemoStore memo;
    const Expr yw = parse_expr("yama . wythoff"), y = parse_expr("yama");
    auto differ = [&](Coord side) {
        std::size_t d = 0;
        for (const auto& x : square_region(2, side).positions) d += enforce_grundy(yw, x, memo) != grundy(y, x, memo);
        return d;
    };
    const auto small = differ(6), large = differ(31);
    return {small == 0, "[0,5]²: " + std::to_string(small) + " differences; [0,30]² (reported only): " +
                            std::to_string(large) + " differences"};
}

Verdict puzzle() {
    MemoStore memo;
    const auto fig1 = parse_sum("bishop.nim@4;3,knight.nim@3;5");
    const auto r1 = solve_sum(fig1, memo);
    const auto plan = r1.advice.losing ? std::string("none") : render_plan(r1.advice.plan);
    const bool ok1 = r1.values.outcome == Outcome::N && !r1.advice.losing && r1.advice.component == 0 &&
                     plan == "{bishop -> (1,0), nim -> (0,3)}";
    const auto r10 = solve_sum(parse_sum("bishop.knight@5;4,nim@4;5"), memo);
    const bool ok10 = r10.values.outcome == Outcome::P && r10.values.values == std::vector<Nimber>{1, 1};
    return {ok1 && ok10, "opening " + std::string(1, outcome_letter(r1.values.outcome)) + " " + plan + ", second " +
                             outcome_letter(r10.values.outcome) + " with " + std::to_string(r10.values.values.at(0)) +
                             "," + std::to_string(r10.values.values.at(1))};
}

Verdict theorem1() {
    MemoStore memo;
    const auto region = square_region(2, 9);
    const char* names[] = {"nim", "bishop", "wythoff", "yama", "knight"};
    std::size_t pairs = 0, disagree = 0;
    for (const char* a : names)
        for (const char* b : names) {
            if (std::string(a) == b) continue;
            // classify_domination raises InternalError on disagreement.
            const auto r = classify_domination(parse_expr(a), parse_expr(b), region, memo);
            disagree += r.a_over_b.holds != r.a_over_b.property1.holds;
            ++pairs;
        }
    return {pairs == 20 && disagree == 0,
            std::to_string(pairs) + " ordered pairs, " + std::to_string(disagree) + " disagreements"};
}

Verdict items() {
    MemoStore memo;
    const auto region = square_region(2, 7).positions;
    std::size_t pairs = 0, short_pairs = 0, fewest = SIZE_MAX, failed = 0;
    std::string first;
    for (const auto& e : checks::builtin_enforce_pairs()) {
        const auto t = checks::enforce_items(e, region, memo);
        fewest = std::min(fewest, t.checks);
        short_pairs += t.checks < 1000;
        failed += t.failures.size();
        if (first.empty() && !t.failures.empty()) first = t.failures.front();
        ++pairs;
    }
    return {failed == 0 && short_pairs == 0,
            std::to_string(pairs) + " pairs of " + std::to_string(region.size()) + " positions, " +
                std::to_string(failed) + " item failures" + (first.empty() ? "" : " (" + first + ")") + "; " +
                std::to_string(short_pairs) + " pairs below 1000 checks, fewest " + std::to_string(fewest)};
}

Verdict oracle_sums() {
    MemoStore memo;
    SumOracle oracle;
    const std::vector<std::string> texts = {"nim",          "bishop",      "knight",          "yama",         "wythoff",
                                            "bishop . nim", "knight . nim", "bishop . knight", "yama . wythoff"};
    std::vector<Expr> exprs;
    for (const auto& t : texts) exprs.push_back(parse_expr(t));
    std::mt19937_64 rng(20240611);
    std::size_t bad = 0;
    for (int i = 0; i < 10000; ++i) {
        SumGame g{{{exprs[rng() % 9], {rng() % 5, rng() % 5}}, {exprs[rng() % 9], {rng() % 5, rng() % 5}}}};
        bad += sum_outcome(g, memo) != oracle.outcome(g);
    }
    return {bad == 0, "10000 sums, " + std::to_string(bad) + " disagreements"};
}

Verdict laws() {
    MemoStore memo;
    const auto region = square_region(2, 9);
    std::size_t runs = 0, bad = 0;
    std::string first;
    for (const auto& tuple : sample_operands(1, 10))
        for (Law law : all_laws()) {
            std::vector<Expr> ops(tuple.begin(), tuple.begin() + static_cast<long>(law_arity(law)));
            const auto r = check_law(law, ops, region, memo);
            ++runs;
            if (!r.pass) {
                ++bad;
                if (first.empty()) first = format_law(r);
            }
        }
    return {runs == 80 && bad == 0,
            std::to_string(runs) + " law checks, " + std::to_string(bad) + " failures" + (first.empty() ? "" : ": " + first)};
}

Verdict nontransitive() {
    MemoStore memo;
    const auto region = square_region(1, 11);
    const Expr a = parse_expr("sub-one"), b = parse_expr("sub-odd"), c = parse_expr("sub-even");
    const auto cb = classify_domination(c, b, region, memo);
    const auto ba = classify_domination(b, a, region, memo);
    const auto ca = classify_domination(c, a, region, memo);
    const std::string text = format_domination(ca);
    const auto& p1 = ca.a_over_b.property1;
    const bool at3 = p1.counterexample && *p1.counterexample == Position{3} && p1.b_options == std::vector<Position>{{2}};
    const std::string reason = "f_sub-one(3) = {2} and sub-even gives N at every one of them";
    const bool quoted = text.find(reason) != std::string::npos;
    return {cb.a_over_b.holds && ba.a_over_b.holds && !ca.a_over_b.holds && at3 && quoted,
            "C ⊢ B " + std::string(cb.a_over_b.holds ? "yes" : "no") + ", B ⊢ A " + (ba.a_over_b.holds ? "yes" : "no") +
                ", C ⊢ A " + (ca.a_over_b.holds ? "yes" : "no") + (quoted ? ", reason at 3 reported" : ", reason missing")};
}

Verdict closed_forms() {
    MemoStore memo;
    auto nim = make_nim(), bishop = make_bishop(), yama = make_yama(), wythoff = make_wythoff();
    std::size_t cells = 0, bad = 0;
    for (Coord x = 0; x <= 20; ++x)
        for (Coord y = 0; y <= 20; ++y) {
            bad += (outcome(*nim, {x, y}, memo) == Outcome::P) != oracle::nim_p(x, y);
            bad += (outcome(*bishop, {x, y}, memo) == Outcome::P) != oracle::bishop_p(x, y);
            bad += (outcome(*yama, {x, y}, memo) == Outcome::P) != oracle::yama_p(x, y);
            bad += (outcome(*wythoff, {x, y}, memo) == Outcome::P) != oracle::wythoff_p(x, y);
            cells += 4;
        }
    return {bad == 0 && cells == 1764, std::to_string(cells) + " cells, " + std::to_string(bad) + " mismatches"};
}

}  // namespace

int main() {
    criterion(1, "one-heap outcome table", table1);
    criterion(2, "figure grids match fixtures", grids);
    criterion(3, "yama . wythoff nimbers coincide with yama", example18);
    criterion(4, "worked puzzle positions", puzzle);
    criterion(5, "Property 1 agrees with direct domination", theorem1);
    criterion(6, "enforce-nimber items (1)-(4) on [0,6]²", items);
    criterion(7, "nim-sum rule agrees with the sum oracle", oracle_sums);
    criterion(8, "lattice laws on sampled operands", laws);
    criterion(9, "non-transitivity witness", nontransitive);
    criterion(10, "closed forms on [0,20]²", closed_forms);
    return failures == 0 ? 0 : 1;
}
