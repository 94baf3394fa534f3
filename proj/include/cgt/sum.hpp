#pragma once

#include <string>
#include <vector>

#include "cgt/expr.hpp"

namespace cgt {

struct SumComponent {
    Expr expr;
    Position pos;
};

/// Disjunctive sum: each move picks one component and moves there.
struct SumGame {
    std::vector<SumComponent> components;

    /// Text in the sum grammar, e.g. "bishop . nim@4;3,knight . nim@3;5".
    std::string render() const;
};

}  // namespace cgt
