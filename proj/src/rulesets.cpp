#include "cgt/rulesets.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "cgt/errors.hpp"

namespace cgt {

namespace {

RulesetPtr make(std::string name, std::size_t dim, OptionFn fn,
                TerminationWitness witness = TerminationWitness::coordinate_sum()) {
    std::string digest = "builtin:" + name;
    return std::make_shared<Ruleset>(std::move(name), dim, std::move(fn), std::move(witness), std::move(digest));
}

void nim_moves(const Position& p, std::vector<Position>& out) {
    for (Coord i = 1; i <= p[0]; ++i) out.push_back({p[0] - i, p[1]});
    for (Coord i = 1; i <= p[1]; ++i) out.push_back({p[0], p[1] - i});
}

void bishop_moves(const Position& p, std::vector<Position>& out) {
    for (Coord i = 1; i <= std::min(p[0], p[1]); ++i) out.push_back({p[0] - i, p[1] - i});
}

}  // namespace

RulesetPtr make_nim() { return make("nim", 2, nim_moves); }

RulesetPtr make_bishop() { return make("bishop", 2, bishop_moves); }

RulesetPtr make_wythoff() {
    return make("wythoff", 2, [](const Position& p, std::vector<Position>& out) {
        nim_moves(p, out);
        bishop_moves(p, out);
    });
}

RulesetPtr make_yama() {
    return make("yama", 2, [](const Position& p, std::vector<Position>& out) {
        for (Coord i = 2; i <= p[0]; ++i) out.push_back({p[0] - i, p[1] + 1});
        for (Coord i = 2; i <= p[1]; ++i) out.push_back({p[0] + 1, p[1] - i});
    });
}

RulesetPtr make_knight() {
    return make("knight", 2, [](const Position& p, std::vector<Position>& out) {
        const Coord x = p[0], y = p[1];
        if (x >= 2) out.push_back({x - 2, y + 1});
        if (x >= 2 && y >= 1) out.push_back({x - 2, y - 1});
        if (x >= 1 && y >= 2) out.push_back({x - 1, y - 2});
        if (y >= 2) out.push_back({x + 1, y - 2});
    });
}

RulesetPtr make_sub_one() {
    return make("sub-one", 1, [](const Position& p, std::vector<Position>& out) {
        if (p[0] > 0) out.push_back({p[0] - 1});
    });
}

RulesetPtr make_sub_odd() {
    return make("sub-odd", 1, [](const Position& p, std::vector<Position>& out) {
        for (Coord k = 1; k <= p[0]; k += 2) out.push_back({p[0] - k});
    });
}

RulesetPtr make_sub_even() {
    return make("sub-even", 1, [](const Position& p, std::vector<Position>& out) {
        for (Coord k = 2; k <= p[0]; k += 2) out.push_back({p[0] - k});
    });
}

namespace {

SubtractionSpec pair_sub12_spec() {
    SubtractionSpec s;
    s.name = "pair-sub12";
    s.dimension = 2;
    s.coordinate_sum_witness = true;
    s.deltas = {{-1, 0}, {-2, 0}, {0, -1}, {0, -2}};
    return s;
}

SubtractionSpec cc_sub12_spec() {
    SubtractionSpec s;
    s.name = "cc-sub12";
    s.dimension = 2;
    s.coordinate_sum_witness = true;
    s.branches = {
        {"++", {{-1, -1}, {-1, -2}, {-2, -1}, {-2, -2}}},
        {"+0", {{-1, 0}, {-2, 0}}},
        {"0+", {{0, -1}, {0, -2}}},
    };
    return s;
}

}  // namespace

RulesetPtr make_pair_sub12() { return make_from_spec(pair_sub12_spec()); }

RulesetPtr make_cc_sub12() { return make_from_spec(cc_sub12_spec()); }

RulesetPtr make_identity_e(std::size_t dimension, const Position& terminal) {
    require_dimension(terminal, dimension, "identity ruleset terminal");
    auto witness = terminal.is_origin() ? TerminationWitness::coordinate_sum() : TerminationWitness::dag_check();
    return std::make_shared<Ruleset>(
        "E", dimension,
        [terminal](const Position& p, std::vector<Position>& out) {
            if (p != terminal) out.push_back(terminal);
        },
        std::move(witness), "builtin:E:" + std::to_string(dimension) + ":" + terminal.sum_str());
}

RulesetPtr make_identity_e(std::size_t dimension) {
    return make_identity_e(dimension, Position(std::vector<Coord>(dimension, 0)));
}

RulesetPtr make_absorbing_o(std::size_t dimension) {
    return std::make_shared<Ruleset>(
        "O", dimension, [](const Position&, std::vector<Position>&) {}, TerminationWitness::coordinate_sum(),
        "builtin:O:" + std::to_string(dimension));
}

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {"nim",     "bishop",  "wythoff",    "yama",     "knight",
                                                   "sub-one", "sub-odd", "sub-even",   "pair-sub12",
                                                   "cc-sub12", "E",      "O"};
    return names;
}

namespace {

std::string_view unalias(std::string_view name) {
    if (name == "rook") return "nim";
    if (name == "queen") return "wythoff";
    return name;
}

}  // namespace

bool is_builtin_name(std::string_view name) {
    name = unalias(name);
    const auto& names = builtin_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

bool is_dimension_free(std::string_view name) { return name == "E" || name == "O"; }

RulesetPtr make_builtin(std::string_view name, std::size_t dimension) {
    name = unalias(name);
    if (name == "nim") return make_nim();
    if (name == "bishop") return make_bishop();
    if (name == "wythoff") return make_wythoff();
    if (name == "yama") return make_yama();
    if (name == "knight") return make_knight();
    if (name == "sub-one") return make_sub_one();
    if (name == "sub-odd") return make_sub_odd();
    if (name == "sub-even") return make_sub_even();
    if (name == "pair-sub12") return make_pair_sub12();
    if (name == "cc-sub12") return make_cc_sub12();
    if (name == "E") return make_identity_e(dimension);
    if (name == "O") return make_absorbing_o(dimension);
    throw UsageError("unknown ruleset '" + std::string(name) + "'");
}

// ---- subtraction specs --------------------------------------------------

namespace {

std::string delta_str(const std::vector<std::int64_t>& d) {
    std::string s = "(";
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(d[i]);
    }
    return s + ")";
}

void check_delta(const SubtractionSpec& spec, const std::vector<std::int64_t>& d) {
    const std::string where = "ruleset '" + spec.name + "' delta " + delta_str(d);
    if (d.size() != spec.dimension)
        throw UsageError(where + " has " + std::to_string(d.size()) + " coordinates, expected " +
                         std::to_string(spec.dimension));
    std::int64_t sum = 0;
    for (auto v : d) sum += v;
    if (spec.coordinate_sum_witness && sum >= 0)
        throw UsageError(where + " does not decrease the coordinate sum; declare witness = dag to allow it");
}

bool valid_name(std::string_view name) {
    if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
    return std::all_of(name.begin(), name.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

bool guard_matches(const std::string& guard, const Position& p) {
    for (std::size_t i = 0; i < guard.size(); ++i) {
        if (guard[i] == '+' && p[i] == 0) return false;
        if (guard[i] == '0' && p[i] != 0) return false;
    }
    return true;
}

void apply(const std::vector<std::int64_t>& d, const Position& p, std::vector<Position>& out) {
    Position q = p;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] < 0) {
            const auto dec = static_cast<Coord>(-d[i]);
            if (p[i] < dec) return;
            q[i] = p[i] - dec;
        } else {
            q[i] = p[i] + static_cast<Coord>(d[i]);
        }
    }
    out.push_back(std::move(q));
}

}  // namespace

void validate(const SubtractionSpec& spec) {
    if (!valid_name(spec.name)) throw UsageError("invalid ruleset name '" + spec.name + "'");
    if (spec.dimension == 0) throw UsageError("ruleset '" + spec.name + "' must have dimension >= 1");
    for (const auto& d : spec.deltas) check_delta(spec, d);
    for (const auto& b : spec.branches) {
        if (b.guard.size() != spec.dimension)
            throw UsageError("ruleset '" + spec.name + "' guard '" + b.guard + "' needs " +
                             std::to_string(spec.dimension) + " entries");
        if (b.guard.find_first_not_of("+0*") != std::string::npos)
            throw UsageError("ruleset '" + spec.name + "' guard '" + b.guard + "' may only use +, 0 and *");
        for (const auto& d : b.deltas) check_delta(spec, d);
    }
}

RulesetPtr make_from_spec(const SubtractionSpec& spec) {
    validate(spec);
    auto witness =
        spec.coordinate_sum_witness ? TerminationWitness::coordinate_sum() : TerminationWitness::dag_check();
    return std::make_shared<Ruleset>(
        spec.name, spec.dimension,
        [spec](const Position& p, std::vector<Position>& out) {
            for (const auto& d : spec.deltas) apply(d, p, out);
            for (const auto& b : spec.branches)
                if (guard_matches(b.guard, p))
                    for (const auto& d : b.deltas) apply(d, p, out);
        },
        std::move(witness), serialize(spec));
}

std::string serialize(const SubtractionSpec& spec) {
    std::ostringstream out;
    auto deltas_line = [&](const std::vector<std::vector<std::int64_t>>& ds) {
        if (ds.empty()) return;
        out << "deltas =";
        for (const auto& d : ds) out << ' ' << delta_str(d);
        out << '\n';
    };
    out << '[' << spec.name << "]\n";
    out << "dimension = " << spec.dimension << '\n';
    out << "witness = " << (spec.coordinate_sum_witness ? "coordinate-sum" : "dag") << '\n';
    deltas_line(spec.deltas);
    for (const auto& b : spec.branches) {
        out << "when = ";
        for (std::size_t i = 0; i < b.guard.size(); ++i) out << (i ? "," : "") << b.guard[i];
        out << '\n';
        deltas_line(b.deltas);
    }
    return out.str();
}

std::string serialize(const std::vector<SubtractionSpec>& specs) {
    std::string out;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        if (i) out += '\n';
        out += serialize(specs[i]);
    }
    return out;
}

namespace {

class SpecParser {
public:
    explicit SpecParser(std::string_view text) : text_(text) {}

    std::vector<SubtractionSpec> run() {
        std::vector<SubtractionSpec> specs;
        bool have_dimension = false;
        while (pos_ < text_.size()) {
            const std::size_t line_start = pos_;
            std::size_t end = text_.find('\n', pos_);
            if (end == std::string_view::npos) end = text_.size();
            std::string_view line = text_.substr(pos_, end - pos_);
            pos_ = end + 1;
            if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
            line_ = line;
            base_ = line_start;
            cur_ = 0;
            skip_ws();
            if (cur_ == line_.size()) continue;

            if (line_[cur_] == '[') {
                if (!specs.empty()) finish(specs.back(), have_dimension);
                ++cur_;
                std::size_t close = line_.find(']', cur_);
                if (close == std::string_view::npos) fail("unterminated block header", {"]"});
                SubtractionSpec s;
                s.name = std::string(trim(line_.substr(cur_, close - cur_)));
                if (!valid_name(s.name)) fail("invalid ruleset name '" + s.name + "'", {"name"});
                cur_ = close + 1;
                skip_ws();
                if (cur_ != line_.size()) fail("unexpected text after block header", {"end of line"});
                specs.push_back(std::move(s));
                have_dimension = false;
                continue;
            }
            if (specs.empty()) fail("field outside a block", {"[name]"});
            SubtractionSpec& s = specs.back();
            std::string key = word();
            skip_ws();
            expect('=');
            skip_ws();
            if (key == "dimension") {
                s.dimension = number<std::size_t>();
                have_dimension = true;
            } else if (key == "witness") {
                std::string w = word();
                if (w == "coordinate-sum")
                    s.coordinate_sum_witness = true;
                else if (w == "dag")
                    s.coordinate_sum_witness = false;
                else
                    fail("unknown witness '" + w + "'", {"coordinate-sum", "dag"});
            } else if (key == "deltas") {
                auto& target = s.branches.empty() ? s.deltas : s.branches.back().deltas;
                while (cur_ < line_.size()) {
                    target.push_back(delta());
                    skip_ws();
                }
            } else if (key == "when") {
                SubtractionSpec::Branch b;
                while (true) {
                    skip_ws();
                    if (cur_ == line_.size() || std::string_view("+0*").find(line_[cur_]) == std::string_view::npos)
                        fail("bad guard entry", {"+", "0", "*"});
                    b.guard += line_[cur_++];
                    skip_ws();
                    if (cur_ == line_.size()) break;
                    expect(',');
                }
                s.branches.push_back(std::move(b));
            } else {
                cur_ = 0;
                fail("unknown field '" + key + "'", {"dimension", "witness", "deltas", "when"});
            }
            skip_ws();
            if (cur_ != line_.size()) fail("unexpected text", {"end of line"});
        }
        if (!specs.empty()) finish(specs.back(), have_dimension);
        return specs;
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) {
        throw ParseError("config: " + msg, base_ + cur_, std::move(expected));
    }

    void finish(const SubtractionSpec& s, bool have_dimension) {
        if (!have_dimension) throw ParseError("config: ruleset '" + s.name + "' has no dimension", base_, {"dimension"});
        try {
            validate(s);
        } catch (const UsageError& e) {
            throw ParseError(std::string("config: ") + e.what(), base_, {});
        }
    }

    static std::string_view trim(std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    }

    void skip_ws() {
        while (cur_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[cur_]))) ++cur_;
    }

    void expect(char c) {
        if (cur_ >= line_.size() || line_[cur_] != c) fail("unexpected character", {std::string(1, c)});
        ++cur_;
    }

    std::string word() {
        std::size_t start = cur_;
        while (cur_ < line_.size() &&
               (std::isalnum(static_cast<unsigned char>(line_[cur_])) || line_[cur_] == '-' || line_[cur_] == '_'))
            ++cur_;
        if (start == cur_) fail("expected a word", {"identifier"});
        return std::string(line_.substr(start, cur_ - start));
    }

    template <class T>
    T number() {
        bool neg = false;
        if (cur_ < line_.size() && (line_[cur_] == '-' || line_[cur_] == '+')) neg = line_[cur_++] == '-';
        std::size_t start = cur_;
        std::int64_t v = 0;
        while (cur_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[cur_]))) {
            if (v > (INT64_MAX - 9) / 10) fail("number too large", {});
            v = v * 10 + (line_[cur_++] - '0');
        }
        if (start == cur_) fail("expected a number", {"integer"});
        if constexpr (std::is_unsigned_v<T>) {
            if (neg) fail("expected a non-negative number", {"integer"});
        }
        return static_cast<T>(neg ? -v : v);
    }

    std::vector<std::int64_t> delta() {
        expect('(');
        std::vector<std::int64_t> d;
        while (true) {
            skip_ws();
            d.push_back(number<std::int64_t>());
            skip_ws();
            if (cur_ < line_.size() && line_[cur_] == ')') break;
            expect(',');
        }
        ++cur_;
        return d;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::string_view line_;
    std::size_t base_ = 0;
    std::size_t cur_ = 0;
};

}  // namespace

std::vector<SubtractionSpec> parse_specs(std::string_view text) { return SpecParser(text).run(); }

// ---- catalog ------------------------------------------------------------

void Catalog::add(const SubtractionSpec& spec) {
    validate(spec);
    if (is_builtin_name(spec.name)) throw UsageError("config ruleset '" + spec.name + "' shadows a builtin");
    if (custom_.count(spec.name)) throw UsageError("config ruleset '" + spec.name + "' is defined twice");
    custom_.emplace(spec.name, make_from_spec(spec));
    specs_.push_back(spec);
}

void Catalog::load_text(std::string_view text) {
    for (const auto& s : parse_specs(text)) add(s);
}

void Catalog::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    load_text(buf.str());
}

bool Catalog::contains(std::string_view name) const { return is_builtin_name(name) || custom_.count(name) > 0; }

bool Catalog::is_dimension_free(std::string_view name) const { return cgt::is_dimension_free(name); }

std::size_t Catalog::dimension_of(std::string_view name) const {
    if (cgt::is_dimension_free(name)) return 0;
    return resolve(name, 0)->dimension();
}

RulesetPtr Catalog::resolve(std::string_view name, std::size_t dimension) const {
    if (auto it = custom_.find(name); it != custom_.end()) return it->second;
    if (cgt::is_dimension_free(name) && dimension == 0)
        throw UsageError("ruleset '" + std::string(name) + "' needs a board dimension");
    return make_builtin(name, dimension);
}

std::vector<std::string> Catalog::names() const {
    std::vector<std::string> out = builtin_names();
    for (const auto& [name, _] : custom_) out.push_back(name);
    return out;
}

}  // namespace cgt
