#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgt/engine.hpp"
#include "json.hpp"

namespace cgt {

Nimber mex(std::vector<Nimber> values);
Nimber nim_sum(const std::vector<Nimber>& values);

/// Classical Grundy value. Select nodes are played as their union ruleset;
/// an expression containing an enforce node is a usage error.
Nimber grundy(const Expr& e, const Position& x, MemoStore& memo);
Nimber grundy(const RulesetPtr& r, const Position& x, MemoStore& memo);
/// Enforce nimber of an enforce node: mex of the intersection over children
/// of their option-nimber sets.
Nimber enforce_grundy(const Expr& e, const Position& x, MemoStore& memo);

/// A finite set of positions with a printable label.
struct Region {
    std::vector<Position> positions;
    std::string label;
};

/// [0,n-1]² on a 2-D board, {0..n-1} on a 1-D board.
Region square_region(std::size_t dimension, Coord n);
/// Every position reachable from `seed` under the union of the leaves of
/// `exprs`, seed included, sorted smallest first.
std::vector<Position> option_closure(const std::vector<Position>& seed, const std::vector<Expr>& exprs,
                                     std::size_t node_cap = kDefaultNodeCap);

struct Property1Result {
    bool holds = true;
    /// Smallest x with O_A(x) = N from which B cannot force a move into P_A.
    std::optional<Position> counterexample;
    /// f_B at the counterexample (the leaf option sets, merged).
    std::vector<Position> b_options;
};

/// Every A-N-position in `region` has a B-move landing on an A-P-position.
/// For a composite B the move is resolved through B's tree. Outcome queries
/// leave the region freely.
Property1Result property1(const Expr& a, const Expr& b, const std::vector<Position>& region, MemoStore& memo);

enum class Relation { ADominatesB, BDominatesA, Similar, Confused };
std::string relation_name(Relation r);

/// One direction of a domination check: does `dominant` dominate `other`?
struct DirectionCheck {
    bool holds = true;
    /// Smallest x with O_{dominant.other}(x) != O_dominant(x).
    std::optional<Position> witness;
    Outcome witness_enforced = Outcome::P;
    Outcome witness_alone = Outcome::P;
    /// Property 1 verdict, computed independently.
    Property1Result property1;
};

struct DominationReport {
    std::string a, b;
    Relation relation = Relation::Similar;
    std::string region_label;
    std::size_t region_size = 0;
    /// Both checks run on the closure of the region under the moves of A and
    /// B, so every recursive reference stays inside the checked set.
    std::size_t closure_size = 0;
    DirectionCheck a_over_b;
    DirectionCheck b_over_a;
};

/// Computes both directions by Property 1 and by direct outcome comparison.
/// A disagreement between the two is an InternalError.
DominationReport classify_domination(const Expr& a, const Expr& b, const Region& region, MemoStore& memo);

enum class Law {
    Absorption1,       // (A +s B) . A  ~  A
    Absorption2,       // (A . B) +s A  ~  A
    Distrib1,          // (A +s B) . C  ~  (A . C) +s (B . C)
    Distrib2,          // (A . B) +s C  ~  (A +s C) . (B +s C)
    IdentityEEnforce,  // A . E  ~  A
    AbsorbOEnforce,    // A . O  ~  O
    IdentityOSelect,   // A +s O  ~  A
    AbsorbESelect,     // A +s E  ~  E
};

const std::vector<Law>& all_laws();
/// `count` seeded operand triples drawn from the builtins of a dimension,
/// E and O excluded. Laws use the first law_arity() entries of each.
std::vector<std::vector<Expr>> sample_operands(std::uint64_t seed, std::size_t count, std::size_t dimension = 2);
std::string law_name(Law law);
std::optional<Law> law_from_name(std::string_view name);
std::size_t law_arity(Law law);

struct LawResult {
    Law law = Law::Absorption1;
    std::string lhs, rhs;
    std::string region_label;
    std::size_t checked = 0;
    bool pass = true;
    std::optional<Position> counterexample;
    Outcome lhs_value = Outcome::P;
    Outcome rhs_value = Outcome::P;
};

/// Position-wise outcome equality of the two sides of `law` on `region`.
LawResult check_law(Law law, const std::vector<Expr>& operands, const Region& region, MemoStore& memo);

struct StrongDominationResult {
    bool found = false;
    std::string candidate;
    std::optional<Position> position;
    Outcome with_b = Outcome::P;
    Outcome without_b = Outcome::P;
    std::size_t candidates_tried = 0;
};

/// Searches `candidates` for C and x with O_{A.B.C}(x) != O_{A.C}(x). Finding
/// nothing is not a proof of strong domination.
StrongDominationResult falsify_strong_domination(const Expr& a, const Expr& b, const std::vector<Expr>& candidates,
                                                 const Region& region, MemoStore& memo);
/// Builtins of the given dimension plus every two-operand enforce and select
/// combination of them.
std::vector<Expr> default_candidate_pool(std::size_t dimension);

struct ThreeCycleResult {
    bool precondition = false;
    /// Set when the precondition holds: outcome tables agree pairwise.
    bool similar = false;
    DominationReport ab, bc, ca;
};

/// If A |- B, B |- C and C |- A on the region, confirms the outcome tables of
/// A, B and C agree. A confirmed cycle with differing tables is an InternalError.
ThreeCycleResult three_cycle_check(const Expr& a, const Expr& b, const Expr& c, const Region& region,
                                   MemoStore& memo);

/// Experimental comparison of the enforce nimbers of A.B against the nimbers
/// of A, for pairs where A dominates B. Reports, never asserts.
struct NimberComparison {
    std::string enforced, alone, region_label;
    std::size_t cells = 0;
    std::size_t mismatches = 0;
    std::optional<Position> first_mismatch;
};

NimberComparison compare_nimbers(const Expr& a, const Expr& b, const Region& region, MemoStore& memo);

nlohmann::json to_json(const DominationReport& r);
nlohmann::json to_json(const LawResult& r);
nlohmann::json to_json(const StrongDominationResult& r);
nlohmann::json to_json(const NimberComparison& r);

}  // namespace cgt
