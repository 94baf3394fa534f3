#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "cgt/position.hpp"

namespace cgt {

/// How a ruleset promises that every play sequence terminates.
struct TerminationWitness {
    enum class Kind { Measure, DagCheck };

    Kind kind = Kind::DagCheck;
    /// Measures with equal names are the same function; a union of rulesets
    /// sharing a measure inherits it.
    std::string measure_name;
    std::function<Coord(const Position&)> measure;

    static TerminationWitness coordinate_sum();
    static TerminationWitness dag_check();

    bool is_measure() const noexcept { return kind == Kind::Measure; }
};

/// Appends f(x) to `out`. Implementations may append duplicates or in any
/// order; Ruleset::options normalizes.
using OptionFn = std::function<void(const Position&, std::vector<Position>&)>;

/// An impartial ruleset (X, f) over the board Z>=0^dimension. Immutable.
class Ruleset {
public:
    Ruleset(std::string name, std::size_t dimension, OptionFn options, TerminationWitness witness,
            std::string digest);

    const std::string& name() const noexcept { return name_; }
    std::size_t dimension() const noexcept { return dimension_; }
    const TerminationWitness& witness() const noexcept { return witness_; }
    /// Identifies the option map beyond its name (config rulesets may reuse names).
    const std::string& digest() const noexcept { return digest_; }

    /// f(x), sorted and without duplicates. Throws UsageError on a dimension mismatch.
    std::vector<Position> options(const Position& x) const;
    bool is_terminal(const Position& x) const { return options(x).empty(); }

private:
    std::string name_;
    std::size_t dimension_;
    OptionFn options_;
    TerminationWitness witness_;
    std::string digest_;
};

using RulesetPtr = std::shared_ptr<const Ruleset>;

void require_dimension(const Position& x, std::size_t dimension, const std::string& what);

}  // namespace cgt
