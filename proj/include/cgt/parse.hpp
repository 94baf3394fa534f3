#pragma once

#include <string_view>

#include "cgt/expr.hpp"
#include "cgt/rulesets.hpp"
#include "cgt/sum.hpp"

namespace cgt {

/// Expression grammar:
///
///     select  := enforce ("+s" enforce)*
///     enforce := primary ("." primary)*
///     primary := name | "(" select ")"
///     name    := [A-Za-z_][A-Za-z0-9_-]*
///
/// `.` is the enforce operator and binds tighter than `+s`, the selective
/// operator. Same-kind nests are flattened; operand order is kept as written.
/// E and O take the board dimension of the other names, or
/// `fallback_dimension` if there are none.
///
/// Errors are ParseError with the byte offset and the expected tokens.
Expr parse_expr(std::string_view text, const Catalog& catalog = Catalog{}, std::size_t fallback_dimension = 2);

/// Sum grammar: term ("," term)*, term := expr "@" coord (";" coord)*.
/// A term made of E and O only takes the dimension of its position.
SumGame parse_sum(std::string_view text, const Catalog& catalog = Catalog{});

/// "3;1" or "3,1" into a position.
Position parse_position(std::string_view text);

}  // namespace cgt
