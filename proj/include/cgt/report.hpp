#pragma once

#include <string>

#include "cgt/analysis.hpp"
#include "cgt/solver.hpp"

namespace cgt {

enum class GridAnalysis { Outcome, Grundy, EnforceGrundy };
enum class GridFormat { Ascii, Csv, Json };

std::optional<GridAnalysis> grid_analysis_from_name(std::string_view name);
std::optional<GridFormat> grid_format_from_name(std::string_view name);
std::string grid_analysis_name(GridAnalysis a);

inline constexpr std::size_t kGridCellCap = 1'000'000;

struct GridRequest {
    Expr expr;
    GridAnalysis analysis = GridAnalysis::Outcome;
    Coord width = 1;
    Coord height = 1;
    GridFormat format = GridFormat::Csv;
};

struct GridResult {
    std::string text;
    /// Set when the request was adjusted, e.g. enforce nimbers asked of a
    /// single ruleset.
    std::string note;
};

/// Cell (column x, row y) holds the value at position (x,y); origin top-left.
/// A 1-D expression takes height 1.
GridResult emit_grid(const GridRequest& req, MemoStore& memo, std::size_t cell_cap = kGridCellCap);

/// "2" for one coordinate, "(3,1)" otherwise.
std::string format_position(const Position& p);

std::string format_domination(const DominationReport& r);
std::string format_law(const LawResult& r);
std::string format_three_cycle(const ThreeCycleResult& r);
std::string format_strong(const std::string& a, const std::string& b, const StrongDominationResult& r,
                          const std::string& region_label);
std::string format_nimber_comparison(const NimberComparison& r);

struct SolveReport {
    SumValues values;
    MoveAdvice advice;
    std::string text;
};

SolveReport solve_sum(const SumGame& g, MemoStore& memo);
nlohmann::json to_json(const SumGame& g, const SolveReport& r);
nlohmann::json to_json(const MovePlan& plan);

}  // namespace cgt
