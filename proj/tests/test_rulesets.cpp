#include "cgt/engine.hpp"
#include "cgt/errors.hpp"
#include "cgt/rulesets.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cgt;

namespace {

std::vector<Coord> heaps(const std::vector<Position>& ps) {
    std::vector<Coord> v;
    for (const auto& p : ps) v.push_back(p[0]);
    return v;
}

SubtractionSpec sub12() {
    SubtractionSpec s;
    s.name = "s12";
    s.dimension = 1;
    s.coordinate_sum_witness = true;
    s.deltas = {{-1}, {-2}};
    return s;
}

}  // namespace

TEST_CASE("one-heap builtins") {
    CHECK(heaps(make_sub_odd()->options({9})) == std::vector<Coord>{0, 2, 4, 6, 8});
    CHECK(heaps(make_sub_even()->options({9})) == std::vector<Coord>{1, 3, 5, 7});
    CHECK(heaps(make_sub_one()->options({9})) == std::vector<Coord>{8});
    CHECK(make_sub_even()->options({1}).empty());
}

TEST_CASE("Table 1 single-ruleset rows") {
    MemoStore memo;
    for (const char* name : {"sub-one", "sub-odd", "sub-even"}) {
        auto r = make_builtin(name);
        std::string row;
        for (Coord x = 0; x <= 10; ++x) row += outcome_letter(outcome(*r, {x}, memo));
        CHECK_MESSAGE(row == oracle::table1().at(name), name);
    }
}

TEST_CASE("continued conjunctive S={1,2} case split") {
    auto d = make_cc_sub12();
    CHECK(d->options({3, 0}) == std::vector<Position>{{1, 0}, {2, 0}});
    CHECK(d->options({0, 1}) == std::vector<Position>{{0, 0}});
    CHECK(d->options({2, 1}) == std::vector<Position>{{0, 0}, {1, 0}});
    CHECK(d->options({2, 2}) == std::vector<Position>{{0, 0}, {0, 1}, {1, 0}, {1, 1}});
    CHECK(d->options({0, 0}).empty());
}

TEST_CASE("pair of S={1,2} heaps") {
    auto c = make_pair_sub12();
    CHECK(c->options({1, 2}) == std::vector<Position>{{0, 2}, {1, 0}, {1, 1}});
    MemoStore memo;
    CHECK(outcome(*c, {2, 2}, memo) == Outcome::P);
}

TEST_CASE("identity and absorbing rulesets") {
    auto e = make_identity_e(2);
    auto opts = e->options({5, 3});
    CHECK(std::find(opts.begin(), opts.end(), Position{0, 0}) != opts.end());
    CHECK(e->options({0, 0}).empty());
    CHECK(make_absorbing_o(2)->options({5, 3}).empty());
    MemoStore memo;
    for (const auto& x : box_region(2, 6, 6)) {
        CHECK((outcome(*e, x, memo) == Outcome::P) == x.is_origin());
        CHECK(outcome(*make_absorbing_o(2), x, memo) == Outcome::P);
    }
    auto off = make_identity_e(2, {1, 1});
    CHECK(off->options({0, 0}) == std::vector<Position>{{1, 1}});
    CHECK_FALSE(off->witness().is_measure());
}

TEST_CASE("nim grundy values are the xor of the heaps") {
    MemoStore memo;
    Evaluator ev(memo);
    auto nim = Expr::base(make_nim());
    for (Coord x = 0; x < 16; ++x)
        for (Coord y = 0; y < 16; ++y) CHECK(ev.nimber(nim, {x, y}) == (x ^ y));
}

TEST_CASE("every builtin is short under the coordinate-sum measure") {
    for (const auto& name : builtin_names()) {
        auto r = make_builtin(name, 2);
        const Position far = r->dimension() == 1 ? Position{30} : Position{12, 12};
        CHECK_MESSAGE(check_short(*r, far).ok(), name);
        CHECK(r->witness().is_measure());
    }
}

TEST_CASE("aliases and unknown names") {
    CHECK(make_builtin("rook")->name() == "nim");
    CHECK(make_builtin("queen")->name() == "wythoff");
    CHECK_THROWS_AS(make_builtin("dragon"), UsageError);
    CHECK(make_builtin("E", 1)->dimension() == 1);
}

TEST_CASE("subtraction spec {1,2} reproduces the period-3 sequence") {
    auto r = make_from_spec(sub12());
    CHECK(heaps(r->options({1})) == std::vector<Coord>{0});
    MemoStore memo;
    Evaluator ev(memo);
    auto e = Expr::base(r);
    std::vector<Nimber> got;
    for (Coord x = 0; x <= 6; ++x) got.push_back(ev.nimber(e, {x}));
    CHECK(got == std::vector<Nimber>{0, 1, 2, 0, 1, 2, 0});
    CHECK(got == oracle::subtraction_sequence({1, 2}, 7));
}

TEST_CASE("spec validation names the offending delta") {
    auto s = sub12();
    s.deltas.push_back({1});
    try {
        validate(s);
        FAIL("expected a validation error");
    } catch (const UsageError& e) {
        CHECK(std::string(e.what()).find("(1)") != std::string::npos);
    }
    s.coordinate_sum_witness = false;
    CHECK_NOTHROW(validate(s));

    auto wrong_dim = sub12();
    wrong_dim.deltas = {{-1, 0}};
    CHECK_THROWS_AS(validate(wrong_dim), UsageError);

    auto bad_guard = sub12();
    bad_guard.branches = {{"x", {{-1}}}};
    CHECK_THROWS_AS(validate(bad_guard), UsageError);
}

TEST_CASE("config text parses, serializes and reparses to the same specs") {
    const std::string text = R"(# two rulesets
[s12]
dimension = 1
witness = coordinate-sum
deltas = (-1) (-2)

[split]
dimension = 2
deltas = (-1,0)
when = +, *
deltas = (-1,-1)
deltas = (-2,-1)
when = 0,+
deltas = (0,-3)
)";
    auto specs = parse_specs(text);
    REQUIRE(specs.size() == 2);
    CHECK(specs[0] == sub12());
    CHECK_FALSE(specs[1].coordinate_sum_witness);
    REQUIRE(specs[1].branches.size() == 2);
    CHECK(specs[1].branches[0].guard == "+*");
    CHECK(specs[1].branches[0].deltas.size() == 2);
    CHECK(parse_specs(serialize(specs)) == specs);

    auto split = make_from_spec(specs[1]);
    CHECK(split->options({2, 0}) == std::vector<Position>{{1, 0}});
    CHECK(split->options({0, 4}) == std::vector<Position>{{0, 1}});
}

TEST_CASE("config round trip on generated specs") {
    std::uint64_t state = 12345;
    auto next = [&] {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return state >> 33;
    };
    for (int round = 0; round < 200; ++round) {
        SubtractionSpec s;
        s.name = "r" + std::to_string(round);
        s.dimension = 1 + next() % 3;
        s.coordinate_sum_witness = next() % 2;
        auto delta = [&] {
            std::vector<std::int64_t> d(s.dimension);
            for (auto& v : d) v = -static_cast<std::int64_t>(next() % 4);
            d[next() % s.dimension] = -1 - static_cast<std::int64_t>(next() % 3);
            return d;
        };
        for (auto n = next() % 3; n; --n) s.deltas.push_back(delta());
        for (auto b = next() % 3; b; --b) {
            SubtractionSpec::Branch br;
            for (std::size_t i = 0; i < s.dimension; ++i) br.guard += "+0*"[next() % 3];
            for (auto n = next() % 3; n; --n) br.deltas.push_back(delta());
            s.branches.push_back(br);
        }
        auto once = parse_specs(serialize(s));
        REQUIRE(once.size() == 1);
        CHECK(once[0] == s);
        CHECK(serialize(once[0]) == serialize(s));
    }
}

TEST_CASE("config errors carry offsets") {
    try {
        parse_specs("[a]\ndimension = 1\ncolour = red\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 18);
        CHECK(std::find(e.expected().begin(), e.expected().end(), "deltas") != e.expected().end());
    }
    CHECK_THROWS_AS(parse_specs("dimension = 1\n"), ParseError);
    CHECK_THROWS_AS(parse_specs("[a]\ndeltas = (-1)\n"), ParseError);
    CHECK_THROWS_AS(parse_specs("[a]\ndimension = 1\ndeltas = (-1\n"), ParseError);
    CHECK_THROWS_AS(parse_specs("[a]\ndimension = 1\nwitness = coordinate-sum\ndeltas = (1)\n"), ParseError);
}

TEST_CASE("catalog resolves builtins and config names") {
    Catalog cat;
    cat.load_text("[s12]\ndimension = 1\ndeltas = (-1) (-2)\n");
    CHECK(cat.contains("s12"));
    CHECK(cat.contains("nim"));
    CHECK(cat.dimension_of("s12") == 1);
    CHECK(cat.dimension_of("E") == 0);
    CHECK(cat.resolve("O", 1)->dimension() == 1);
    CHECK_THROWS_AS(cat.resolve("E", 0), UsageError);
    CHECK_THROWS_AS(cat.load_text("[nim]\ndimension = 2\n"), UsageError);
    CHECK_THROWS_AS(cat.load_text("[s12]\ndimension = 1\n"), UsageError);
}

TEST_CASE("config digests separate rulesets that share a name") {
    auto a = sub12();
    auto b = sub12();
    b.deltas = {{-1}};
    CHECK(Expr::base(make_from_spec(a)).id() != Expr::base(make_from_spec(b)).id());
    CHECK(Expr::base(make_from_spec(a)).id() == Expr::base(make_from_spec(sub12())).id());
}
