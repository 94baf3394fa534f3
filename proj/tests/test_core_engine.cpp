#include <thread>

#include "cgt/engine.hpp"
#include "cgt/errors.hpp"
#include "cgt/rulesets.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cgt;

namespace {

Outcome out(const RulesetPtr& r, Position x) {
    MemoStore memo;
    return outcome(*r, x, memo);
}

RulesetPtr self_loop() {
    SubtractionSpec s;
    s.name = "stay";
    s.dimension = 2;
    s.deltas = {{0, 0}};
    return make_from_spec(s);
}

}  // namespace

TEST_CASE("options at documented positions") {
    CHECK(options(*make_nim(), {0, 0}).empty());
    CHECK(options(*make_yama(), {1, 1}).empty());
    auto k = options(*make_knight(), {5, 2});
    CHECK(k == std::vector<Position>{{3, 1}, {3, 3}, {4, 0}, {6, 0}});
    CHECK(options(*make_nim(), {2, 1}) == std::vector<Position>{{0, 1}, {1, 1}, {2, 0}});
}

TEST_CASE("options reject a position of the wrong dimension") {
    CHECK_THROWS_AS(options(*make_nim(), {3}), UsageError);
    CHECK_THROWS_AS(options(*make_sub_one(), {1, 1}), UsageError);
}

TEST_CASE("outcomes at documented positions") {
    CHECK(out(make_nim(), {3, 3}) == Outcome::P);
    CHECK(out(make_bishop(), {0, 7}) == Outcome::P);
    CHECK(out(make_yama(), {4, 3}) == Outcome::P);
    CHECK(out(make_wythoff(), {1, 2}) == Outcome::P);
    CHECK(out(make_nim(), {0, 0}) == Outcome::P);
    CHECK(out(make_nim(), {0, 1}) == Outcome::N);
}

TEST_CASE("outcome recursion agrees with the closed forms on [0,20]^2") {
    MemoStore memo;
    auto nim = make_nim(), bishop = make_bishop(), yama = make_yama(), wythoff = make_wythoff();
    int mismatches = 0;
    for (Coord x = 0; x <= 20; ++x)
        for (Coord y = 0; y <= 20; ++y) {
            mismatches += (outcome(*nim, {x, y}, memo) == Outcome::P) != oracle::nim_p(x, y);
            mismatches += (outcome(*bishop, {x, y}, memo) == Outcome::P) != oracle::bishop_p(x, y);
            mismatches += (outcome(*yama, {x, y}, memo) == Outcome::P) != oracle::yama_p(x, y);
            mismatches += (outcome(*wythoff, {x, y}, memo) == Outcome::P) != oracle::wythoff_p(x, y);
        }
    CHECK(mismatches == 0);
}

TEST_CASE("outcome recursion soundness") {
    MemoStore memo;
    for (const auto& r : {make_knight(), make_yama(), make_wythoff()})
        for (const auto& x : box_region(2, 9, 9)) {
            bool to_p = false;
            for (const auto& o : options(*r, x)) to_p = to_p || outcome(*r, o, memo) == Outcome::P;
            CHECK((outcome(*r, x, memo) == Outcome::N) == to_p);
        }
}

TEST_CASE("warm and cold caches give identical results in any query order") {
    auto knight = Expr::base(make_knight());
    MemoStore warm;
    Evaluator w(warm);
    auto region = box_region(2, 12, 12);
    for (const auto& x : region) w.nimber(knight, x);
    for (auto it = region.rbegin(); it != region.rend(); ++it) {
        MemoStore cold;
        Evaluator c(cold);
        CHECK(c.nimber(knight, *it) == w.nimber(knight, *it));
        CHECK(c.outcome(knight, *it) == w.outcome(knight, *it));
    }
    CHECK(warm.stats().hits > 0);
}

TEST_CASE("shared memo store across threads") {
    MemoStore shared;
    auto e = Expr::enforce({Expr::base(make_bishop()), Expr::base(make_knight())});
    auto work = [&] {
        Evaluator ev(shared);
        for (const auto& x : box_region(2, 15, 15)) ev.nimber(e, x);
    };
    std::thread a(work), b(work);
    a.join();
    b.join();
    MemoStore alone;
    Evaluator ev(alone);
    for (const auto& x : box_region(2, 15, 15)) CHECK(ev.nimber(e, x) == *shared.find_nimber(e.id(), PositionKey::of(x)));
}

TEST_CASE("memo entries are write-once") {
    MemoStore m;
    auto k = PositionKey::of({1, 2});
    m.store_outcome(7, k, Outcome::P);
    CHECK_NOTHROW(m.store_outcome(7, k, Outcome::P));
    CHECK_THROWS_AS(m.store_outcome(7, k, Outcome::N), InternalError);
}

TEST_CASE("position keys pack small coordinates and widen large ones") {
    auto small = PositionKey::of({3, 4});
    CHECK(small.wide.empty());
    auto big = PositionKey::of({Coord{1} << 40, 1});
    CHECK_FALSE(big.wide.empty());
    CHECK(PositionKey::of({Coord{1} << 40, 1}) == big);
    CHECK_FALSE(PositionKey::of({Coord{1} << 40, 2}) == big);
    CHECK_FALSE(PositionKey::of({4, 3}) == small);
}

TEST_CASE("check_short accepts measured builtins") {
    auto yama = make_yama();
    for (const auto& x : box_region(2, 21, 21))
        for (const auto& o : options(*yama, x)) REQUIRE(o.coordinate_sum() < x.coordinate_sum());
    CHECK(check_short(*yama, {20, 20}).ok());
    CHECK(check_short(*make_nim(), {20, 20}).ok());
    CHECK(check_short(*make_knight(), {20, 20}).ok());
}

TEST_CASE("check_short reports a self-loop under dag checking") {
    auto r = self_loop();
    auto rep = check_short(*r, {2, 2});
    CHECK(rep.status == ShortReport::Status::Violation);
    CHECK(rep.cycle == std::vector<Position>{{2, 2}});
    CHECK(describe(rep).find("cycle") != std::string::npos);
}

TEST_CASE("check_short reports a measure that does not decrease") {
    auto grow = std::make_shared<Ruleset>(
        "grow", 1, [](const Position& p, std::vector<Position>& out) { out.push_back({p[0] + 1}); },
        TerminationWitness::coordinate_sum(), "test:grow");
    auto rep = check_short(*grow, {0});
    CHECK(rep.status == ShortReport::Status::Violation);
    REQUIRE(rep.bad_edge);
    CHECK(rep.bad_edge->second == Position{1});
}

TEST_CASE("check_short is inconclusive past the node cap") {
    auto grow = std::make_shared<Ruleset>(
        "grow", 1, [](const Position& p, std::vector<Position>& out) { out.push_back({p[0] + 1}); },
        TerminationWitness::dag_check(), "test:grow-dag");
    CHECK(check_short(*grow, {0}, 100).status == ShortReport::Status::Inconclusive);
}

TEST_CASE("evaluation raises a termination error on cycles and runaway exploration") {
    MemoStore memo;
    Evaluator ev(memo);
    CHECK_THROWS_AS(ev.outcome(Expr::base(self_loop()), {1, 1}), TerminationError);
    auto grow = std::make_shared<Ruleset>(
        "grow", 1, [](const Position& p, std::vector<Position>& out) { out.push_back({p[0] + 1}); },
        TerminationWitness::dag_check(), "test:grow-dag");
    Evaluator capped(memo, 1000);
    CHECK_THROWS_AS(capped.outcome(Expr::base(grow), {0}), TerminationError);
}

TEST_CASE("deep chains evaluate without recursion limits") {
    MemoStore memo;
    Evaluator ev(memo);
    CHECK(ev.outcome(Expr::base(make_sub_one()), {200000}) == Outcome::P);
    CHECK(ev.nimber(Expr::base(make_sub_one()), {200001}) == 1);
}

TEST_CASE("box regions are row-major") {
    auto r = box_region(2, 3, 2);
    REQUIRE(r.size() == 6);
    CHECK(r[1] == Position{1, 0});
    CHECK(r[3] == Position{0, 1});
    CHECK(box_region(1, 4).size() == 4);
}
