#include "cgt/ruleset.hpp"

#include <algorithm>

#include "cgt/errors.hpp"

namespace cgt {

TerminationWitness TerminationWitness::coordinate_sum() {
    TerminationWitness w;
    w.kind = Kind::Measure;
    w.measure_name = "coordinate-sum";
    w.measure = [](const Position& p) { return p.coordinate_sum(); };
    return w;
}

TerminationWitness TerminationWitness::dag_check() { return {}; }

Ruleset::Ruleset(std::string name, std::size_t dimension, OptionFn options, TerminationWitness witness,
                 std::string digest)
    : name_(std::move(name)),
      dimension_(dimension),
      options_(std::move(options)),
      witness_(std::move(witness)),
      digest_(std::move(digest)) {
    if (dimension_ == 0) throw UsageError("ruleset '" + name_ + "' must have dimension >= 1");
}

std::vector<Position> Ruleset::options(const Position& x) const {
    require_dimension(x, dimension_, "ruleset '" + name_ + "'");
    std::vector<Position> out;
    options_(x, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void require_dimension(const Position& x, std::size_t dimension, const std::string& what) {
    if (x.dimension() != dimension)
        throw UsageError(what + " expects a " + std::to_string(dimension) + "-dimensional position, got " +
                         x.str());
}

}  // namespace cgt
