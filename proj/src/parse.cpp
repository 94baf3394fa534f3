#include "cgt/parse.hpp"

#include <algorithm>

#include <cctype>

#include "cgt/errors.hpp"

namespace cgt {

namespace {

struct Ast {
    enum class Kind { Name, Enforce, Select } kind = Kind::Name;
    std::string name;
    std::size_t offset = 0;
    std::vector<Ast> kids;
};

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; }

class ExprParser {
public:
    ExprParser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

    Ast run() {
        Ast root = select();
        skip_ws();
        if (pos_ < text_.size()) {
            if (text_[pos_] == ')') fail("unbalanced ')'", {".", "+s", "end of input"});
            fail("unexpected '" + std::string(1, text_[pos_]) + "'", {".", "+s", "end of input"});
        }
        return root;
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) const {
        throw ParseError(msg, base_ + pos_, std::move(expected));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool at_select_op() {
        skip_ws();
        return text_.substr(pos_, 2) == "+s";
    }

    bool at_enforce_op() {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == '.';
    }

    Ast fold(Ast::Kind kind, std::vector<Ast> items) {
        if (items.size() == 1) return std::move(items.front());
        Ast node;
        node.kind = kind;
        node.offset = items.front().offset;
        for (Ast& a : items) {
            if (a.kind == kind)
                for (Ast& k : a.kids) node.kids.push_back(std::move(k));
            else
                node.kids.push_back(std::move(a));
        }
        return node;
    }

    Ast select() {
        std::vector<Ast> items{enforce()};
        while (at_select_op()) {
            pos_ += 2;
            items.push_back(enforce());
        }
        return fold(Ast::Kind::Select, std::move(items));
    }

    Ast enforce() {
        std::vector<Ast> items{primary()};
        while (at_enforce_op()) {
            ++pos_;
            items.push_back(primary());
        }
        return fold(Ast::Kind::Enforce, std::move(items));
    }

    Ast primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input", {"ruleset name", "("});
        if (text_[pos_] == '(') {
            ++pos_;
            Ast inner = select();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')') fail("unbalanced '('", {".", "+s", ")"});
            ++pos_;
            return inner;
        }
        if (!name_start(text_[pos_])) fail("unexpected '" + std::string(1, text_[pos_]) + "'", {"ruleset name", "("});
        Ast leaf;
        leaf.offset = base_ + pos_;
        const std::size_t start = pos_;
        while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
        leaf.name = std::string(text_.substr(start, pos_ - start));
        return leaf;
    }

    std::string_view text_;
    std::size_t base_;
    std::size_t pos_ = 0;
};

void collect_names(const Ast& a, std::vector<const Ast*>& out) {
    if (a.kind == Ast::Kind::Name)
        out.push_back(&a);
    else
        for (const Ast& k : a.kids) collect_names(k, out);
}

Expr build(const Ast& a, const Catalog& catalog, std::size_t dimension) {
    if (a.kind == Ast::Kind::Name) return Expr::base(catalog.resolve(a.name, dimension));
    std::vector<Expr> kids;
    for (const Ast& k : a.kids) kids.push_back(build(k, catalog, dimension));
    return a.kind == Ast::Kind::Enforce ? Expr::enforce(std::move(kids)) : Expr::select(std::move(kids));
}

Expr parse_at(std::string_view text, std::size_t base, const Catalog& catalog, std::size_t fallback) {
    Ast ast = ExprParser(text, base).run();
    std::vector<const Ast*> names;
    collect_names(ast, names);
    std::size_t dimension = 0;
    for (const Ast* n : names) {
        if (!catalog.contains(n->name)) throw ParseError("unknown ruleset '" + n->name + "'", n->offset, catalog.names());
        if (catalog.is_dimension_free(n->name)) continue;
        const std::size_t d = catalog.dimension_of(n->name);
        if (dimension == 0)
            dimension = d;
        else if (d != dimension)
            throw ParseError("ruleset '" + n->name + "' is " + std::to_string(d) +
                                 "-dimensional but the expression is " + std::to_string(dimension) + "-dimensional",
                             n->offset);
    }
    return build(ast, catalog, dimension == 0 ? fallback : dimension);
}

Coord parse_coord(std::string_view text, std::size_t& pos, std::size_t base) {
    const std::size_t start = pos;
    Coord v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        const Coord digit = static_cast<Coord>(text[pos] - '0');
        if (v > (UINT64_MAX - digit) / 10) throw ParseError("coordinate too large", base + start);
        v = v * 10 + digit;
        ++pos;
    }
    if (pos == start) throw ParseError("expected a coordinate", base + pos, {"non-negative integer"});
    return v;
}

}  // namespace

Expr parse_expr(std::string_view text, const Catalog& catalog, std::size_t fallback_dimension) {
    return parse_at(text, 0, catalog, fallback_dimension);
}

SumGame parse_sum(std::string_view text, const Catalog& catalog) {
    SumGame g;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view term = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        const std::size_t at = term.find('@');
        if (at == std::string_view::npos) throw ParseError("sum term without a position", start + term.size(), {"@"});
        std::string_view coords = term.substr(at + 1);
        // E and O alone take the dimension of their position.
        const std::size_t written = static_cast<std::size_t>(std::count(coords.begin(), coords.end(), ';')) + 1;
        Expr e = parse_at(term.substr(0, at), start, catalog, written);

        const std::size_t cbase = start + at + 1;
        std::size_t pos = 0;
        std::vector<Coord> xs;
        while (true) {
            while (pos < coords.size() && coords[pos] == ' ') ++pos;
            xs.push_back(parse_coord(coords, pos, cbase));
            while (pos < coords.size() && coords[pos] == ' ') ++pos;
            if (pos == coords.size()) break;
            if (coords[pos] != ';') throw ParseError("unexpected character in position", cbase + pos, {";", ","});
            ++pos;
        }
        if (xs.size() != e.dimension())
            throw ParseError("position has " + std::to_string(xs.size()) + " coordinates but '" + e.render() +
                                 "' is " + std::to_string(e.dimension()) + "-dimensional",
                             cbase);
        g.components.push_back({e, Position(std::move(xs))});
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return g;
}

Position parse_position(std::string_view text) {
    std::vector<Coord> xs;
    std::size_t pos = 0;
    while (true) {
        xs.push_back(parse_coord(text, pos, 0));
        if (pos == text.size()) break;
        if (text[pos] != ';' && text[pos] != ',') throw ParseError("unexpected character in position", pos, {";"});
        ++pos;
    }
    return Position(std::move(xs));
}

std::string SumGame::render() const {
    std::string out;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (i) out += ',';
        out += components[i].expr.render() + "@" + components[i].pos.sum_str();
    }
    return out;
}

}  // namespace cgt
