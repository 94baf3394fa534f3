#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cgt/ruleset.hpp"

namespace cgt {

// Built-in rulesets. Two-dimensional unless noted; all carry the
// coordinate-sum measure.

RulesetPtr make_nim();
RulesetPtr make_bishop();
/// Nim moves plus bishop moves.
RulesetPtr make_wythoff();
/// Remove at least two tokens from one heap and add one to the other.
RulesetPtr make_yama();
/// (x-2,y+1), (x-2,y-1), (x-1,y-2), (x+1,y-2), kept only when on the board.
RulesetPtr make_knight();
/// One heap: subtract 1.
RulesetPtr make_sub_one();
/// One heap: subtract any odd number.
RulesetPtr make_sub_odd();
/// One heap: subtract any positive even number.
RulesetPtr make_sub_even();
/// Two S={1,2} subtraction heaps, one heap per move.
RulesetPtr make_pair_sub12();
/// Continued conjunctive sum of two S={1,2} heaps: move in every heap that
/// still has tokens.
RulesetPtr make_cc_sub12();
/// Jumps to `terminal` from every other position.
RulesetPtr make_identity_e(std::size_t dimension, const Position& terminal);
RulesetPtr make_identity_e(std::size_t dimension);
/// No options anywhere.
RulesetPtr make_absorbing_o(std::size_t dimension);

/// Catalog name lookup ("nim", "rook", "bishop", ... "E", "O"). E and O need a
/// board dimension; every other name ignores it.
RulesetPtr make_builtin(std::string_view name, std::size_t dimension = 2);
/// Canonical builtin names, aliases excluded.
const std::vector<std::string>& builtin_names();
bool is_builtin_name(std::string_view name);
/// True for names whose dimension follows the surrounding expression (E, O).
bool is_dimension_free(std::string_view name);

/// A finite subtraction game over Z>=0^d.
///
/// Unconditional deltas always apply; a branch applies when every coordinate
/// matches its guard ('+' positive, '0' zero, '*' either). The option set is
/// the union of all applicable deltas whose result stays on the board.
struct SubtractionSpec {
    struct Branch {
        std::string guard;
        std::vector<std::vector<std::int64_t>> deltas;
        friend bool operator==(const Branch&, const Branch&) = default;
    };

    std::string name;
    std::size_t dimension = 1;
    bool coordinate_sum_witness = false;
    std::vector<std::vector<std::int64_t>> deltas;
    std::vector<Branch> branches;

    friend bool operator==(const SubtractionSpec&, const SubtractionSpec&) = default;
};

/// Throws UsageError naming the first offending field or delta.
void validate(const SubtractionSpec& spec);
RulesetPtr make_from_spec(const SubtractionSpec& spec);

/// Config text: one `[name]` block per ruleset. See docs in README.
std::vector<SubtractionSpec> parse_specs(std::string_view text);
std::string serialize(const SubtractionSpec& spec);
std::string serialize(const std::vector<SubtractionSpec>& specs);

/// Name resolution for expression atoms: builtins plus config rulesets.
class Catalog {
public:
    Catalog() = default;

    /// Adds validated config rulesets. Names must not shadow builtins or
    /// each other.
    void add(const SubtractionSpec& spec);
    void load_text(std::string_view text);
    void load_file(const std::string& path);

    bool contains(std::string_view name) const;
    bool is_dimension_free(std::string_view name) const;
    /// Native dimension of a named ruleset; 0 for E and O.
    std::size_t dimension_of(std::string_view name) const;
    RulesetPtr resolve(std::string_view name, std::size_t dimension) const;

    std::vector<std::string> names() const;
    const std::vector<SubtractionSpec>& specs() const noexcept { return specs_; }

private:
    std::vector<SubtractionSpec> specs_;
    std::map<std::string, RulesetPtr, std::less<>> custom_;
};

}  // namespace cgt
