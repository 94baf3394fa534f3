#include "cgt/cgt.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <sstream>
#include <string>

#include "cgt/analysis.hpp"
#include "cgt/errors.hpp"
#include "cgt/parse.hpp"
#include "cgt/play.hpp"
#include "cgt/report.hpp"

struct cgt_context {
    cgt::Catalog catalog;
    cgt::MemoStore memo;
};

struct cgt_expr {
    cgt::Expr expr;
};

struct cgt_play {
    std::unique_ptr<cgt::PlaySession> session;
};

namespace {

thread_local std::string last_error;

template <class F>
cgt_status guarded(F&& f) {
    try {
        last_error.clear();
        return f();
    } catch (const cgt::UsageError& e) {
        last_error = e.what();
        return CGT_ERR_USAGE;
    } catch (const cgt::ParseError& e) {
        last_error = e.what();
        return CGT_ERR_PARSE;
    } catch (const cgt::TerminationError& e) {
        last_error = e.what();
        return CGT_ERR_TERMINATION;
    } catch (const cgt::GuardError& e) {
        last_error = e.what();
        return CGT_ERR_GUARD;
    } catch (const cgt::InternalError& e) {
        last_error = e.what();
        return CGT_ERR_INTERNAL;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return CGT_ERR_GUARD;
    } catch (const std::exception& e) {
        last_error = std::string("internal: ") + e.what();
        return CGT_ERR_INTERNAL;
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void need(const void* p, const char* what) {
    if (!p) throw cgt::UsageError(std::string(what) + " is NULL");
}

cgt::Position to_position(const uint64_t* coords, size_t n) {
    if (n && !coords) throw cgt::UsageError("coords is NULL");
    return cgt::Position(std::vector<cgt::Coord>(coords, coords + n));
}

cgt::Expr parse(cgt_context* ctx, const char* text, std::size_t fallback_dimension = 2) {
    need(text, "expression");
    return cgt::parse_expr(text, ctx->catalog, fallback_dimension);
}

cgt::Region region_for(const cgt::Expr& e, uint64_t n) {
    if (n == 0) throw cgt::UsageError("region size must be positive");
    return cgt::square_region(e.dimension(), n);
}

void same_dimension(const cgt::Expr& a, const cgt::Expr& b) {
    if (a.dimension() != b.dimension())
        throw cgt::UsageError("'" + a.render() + "' and '" + b.render() + "' have different dimensions");
}

std::vector<std::string> split_operands(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto bar = s.find('|', start);
        out.push_back(s.substr(start, bar - start));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return out;
}

}  // namespace

extern "C" {

const char* cgt_last_error(void) { return last_error.c_str(); }

void cgt_string_free(char* s) { std::free(s); }

cgt_status cgt_context_new(cgt_context** out) {
    return guarded([&] {
        need(out, "out");
        *out = new cgt_context();
        return CGT_OK;
    });
}

void cgt_context_free(cgt_context* ctx) { delete ctx; }

cgt_status cgt_context_load_config(cgt_context* ctx, const char* path) {
    return guarded([&] {
        need(ctx, "context");
        need(path, "path");
        ctx->catalog.load_file(path);
        return CGT_OK;
    });
}

cgt_status cgt_context_load_config_text(cgt_context* ctx, const char* text) {
    return guarded([&] {
        need(ctx, "context");
        need(text, "text");
        ctx->catalog.load_text(text);
        return CGT_OK;
    });
}

cgt_status cgt_expr_parse(cgt_context* ctx, const char* text, cgt_expr** out) {
    return guarded([&] {
        need(ctx, "context");
        need(out, "out");
        *out = new cgt_expr{parse(ctx, text)};
        return CGT_OK;
    });
}

void cgt_expr_free(cgt_expr* e) { delete e; }

cgt_status cgt_expr_render(const cgt_expr* e, char** out) {
    return guarded([&] {
        need(e, "expr");
        need(out, "out");
        *out = dup(e->expr.render());
        return CGT_OK;
    });
}

uint64_t cgt_expr_id(const cgt_expr* e) { return e ? e->expr.id() : 0; }

size_t cgt_expr_dimension(const cgt_expr* e) { return e ? e->expr.dimension() : 0; }

cgt_status cgt_outcome(cgt_context* ctx, const cgt_expr* e, const uint64_t* coords, size_t n, char* out) {
    return guarded([&] {
        need(ctx, "context");
        need(e, "expr");
        need(out, "out");
        cgt::Evaluator ev(ctx->memo);
        *out = cgt::outcome_letter(ev.outcome(e->expr, to_position(coords, n)));
        return CGT_OK;
    });
}

cgt_status cgt_nimber(cgt_context* ctx, const cgt_expr* e, const uint64_t* coords, size_t n, uint64_t* out) {
    return guarded([&] {
        need(ctx, "context");
        need(e, "expr");
        need(out, "out");
        cgt::Evaluator ev(ctx->memo);
        *out = ev.nimber(e->expr, to_position(coords, n));
        return CGT_OK;
    });
}

cgt_status cgt_grid(cgt_context* ctx, const char* expr, const char* analysis, uint64_t width, uint64_t height,
                    const char* format, char** text, char** note) {
    return guarded([&] {
        need(ctx, "context");
        need(text, "text");
        cgt::GridRequest req{parse(ctx, expr)};
        auto a = cgt::grid_analysis_from_name(analysis ? analysis : "outcome");
        if (!a) throw cgt::UsageError(std::string("unknown analysis '") + analysis + "'");
        auto f = cgt::grid_format_from_name(format ? format : "csv");
        if (!f) throw cgt::UsageError(std::string("unknown format '") + format + "'");
        req.analysis = *a;
        req.format = *f;
        req.width = width;
        req.height = height;
        auto res = cgt::emit_grid(req, ctx->memo);
        *text = dup(res.text);
        if (note) *note = dup(res.note);
        return CGT_OK;
    });
}

cgt_status cgt_dominate(cgt_context* ctx, const char* a, const char* b, uint64_t region, int json, char** report) {
    return guarded([&] {
        need(ctx, "context");
        need(report, "report");
        auto ea = parse(ctx, a), eb = parse(ctx, b, ea.dimension());
        same_dimension(ea, eb);
        auto r = cgt::classify_domination(ea, eb, region_for(ea, region), ctx->memo);
        *report = dup(json ? cgt::to_json(r).dump(2) + "\n" : cgt::format_domination(r));
        return r.a_over_b.holds ? CGT_OK : CGT_FALSE;
    });
}

cgt_status cgt_three_cycle(cgt_context* ctx, const char* a, const char* b, const char* c, uint64_t region,
                           char** report) {
    return guarded([&] {
        need(ctx, "context");
        need(report, "report");
        auto ea = parse(ctx, a), eb = parse(ctx, b, ea.dimension()), ec = parse(ctx, c, ea.dimension());
        same_dimension(ea, eb);
        same_dimension(ea, ec);
        auto r = cgt::three_cycle_check(ea, eb, ec, region_for(ea, region), ctx->memo);
        *report = dup(cgt::format_three_cycle(r));
        return r.precondition && r.similar ? CGT_OK : CGT_FALSE;
    });
}

cgt_status cgt_strong(cgt_context* ctx, const char* a, const char* b, const char* candidate, uint64_t region,
                      int json, char** report) {
    return guarded([&] {
        need(ctx, "context");
        need(report, "report");
        auto ea = parse(ctx, a), eb = parse(ctx, b, ea.dimension());
        same_dimension(ea, eb);
        std::vector<cgt::Expr> pool;
        if (candidate) {
            pool.push_back(parse(ctx, candidate, ea.dimension()));
            same_dimension(ea, pool.back());
        } else {
            pool = cgt::default_candidate_pool(ea.dimension());
        }
        auto reg = region_for(ea, region);
        auto r = cgt::falsify_strong_domination(ea, eb, pool, reg, ctx->memo);
        *report = dup(json ? cgt::to_json(r).dump(2) + "\n" : cgt::format_strong(a, b, r, reg.label));
        return r.found ? CGT_FALSE : CGT_OK;
    });
}

cgt_status cgt_compare_nimbers(cgt_context* ctx, const char* a, const char* b, uint64_t region, int json,
                               char** report) {
    return guarded([&] {
        need(ctx, "context");
        need(report, "report");
        auto ea = parse(ctx, a), eb = parse(ctx, b, ea.dimension());
        same_dimension(ea, eb);
        auto r = cgt::compare_nimbers(ea, eb, region_for(ea, region), ctx->memo);
        *report = dup(json ? cgt::to_json(r).dump(2) + "\n" : cgt::format_nimber_comparison(r));
        return CGT_OK;
    });
}

cgt_status cgt_law(cgt_context* ctx, const char* law, const char* operands, uint64_t region, int json,
                   char** report) {
    return guarded([&] {
        need(ctx, "context");
        need(report, "report");
        need(law, "law");
        need(operands, "operands");
        auto l = cgt::law_from_name(law);
        if (!l) throw cgt::UsageError(std::string("unknown law '") + law + "'");
        std::vector<cgt::Expr> ops;
        for (const auto& t : split_operands(operands))
            ops.push_back(parse(ctx, t.c_str(), ops.empty() ? 2 : ops.front().dimension()));
        if (ops.size() != cgt::law_arity(*l))
            throw cgt::UsageError(cgt::law_name(*l) + " takes " + std::to_string(cgt::law_arity(*l)) +
                                  " operands, got " + std::to_string(ops.size()));
        for (const auto& o : ops) same_dimension(ops.front(), o);
        auto r = cgt::check_law(*l, ops, region_for(ops.front(), region), ctx->memo);
        *report = dup(json ? cgt::to_json(r).dump(2) + "\n" : cgt::format_law(r));
        return r.pass ? CGT_OK : CGT_FALSE;
    });
}

cgt_status cgt_laws_sampled(cgt_context* ctx, uint64_t seed, size_t tuples, uint64_t region, int json,
                            char** report) {
    return guarded([&] {
        need(ctx, "context");
        need(report, "report");
        if (region == 0) throw cgt::UsageError("region size must be positive");
        const auto reg = cgt::square_region(2, region);
        const auto samples = cgt::sample_operands(seed, tuples, 2);
        std::ostringstream text;
        nlohmann::json arr = nlohmann::json::array();
        std::size_t failures = 0;
        for (cgt::Law law : cgt::all_laws())
            for (const auto& t : samples) {
                std::vector<cgt::Expr> ops(t.begin(), t.begin() + static_cast<long>(cgt::law_arity(law)));
                auto r = cgt::check_law(law, ops, reg, ctx->memo);
                failures += r.pass ? 0 : 1;
                text << cgt::format_law(r);
                arr.push_back(cgt::to_json(r));
            }
        const std::size_t total = cgt::all_laws().size() * samples.size();
        if (json) {
            nlohmann::json j = {{"seed", seed}, {"region", reg.label}, {"checks", arr}, {"failures", failures}};
            *report = dup(j.dump(2) + "\n");
        } else {
            text << (total - failures) << " of " << total << " checks pass\n";
            *report = dup(text.str());
        }
        return failures ? CGT_FALSE : CGT_OK;
    });
}

cgt_status cgt_solve(cgt_context* ctx, const char* sum, int json, char** report) {
    return guarded([&] {
        need(ctx, "context");
        need(report, "report");
        need(sum, "sum");
        auto g = cgt::parse_sum(sum, ctx->catalog);
        auto r = cgt::solve_sum(g, ctx->memo);
        *report = dup(json ? cgt::to_json(g, r).dump(2) + "\n" : r.text);
        return CGT_OK;
    });
}

cgt_status cgt_check(cgt_context* ctx, const char* expr, const char* at, char** report) {
    return guarded([&] {
        need(ctx, "context");
        need(report, "report");
        need(at, "position");
        auto e = parse(ctx, expr);
        auto x = cgt::parse_position(at);
        if (x.dimension() != e.dimension())
            throw cgt::UsageError("position " + x.str() + " does not fit the " + std::to_string(e.dimension()) +
                                  "-dimensional '" + e.render() + "'");
        auto r = e.is_base() ? cgt::check_short(e.ruleset(), x) : cgt::check_jointly_short(e, x);
        *report = dup(cgt::describe(r) + "\n");
        if (!r.ok()) last_error = r.message;
        return r.ok() ? CGT_OK : CGT_ERR_TERMINATION;
    });
}

cgt_status cgt_play_new(cgt_context* ctx, const char* sum, int human_first, int human_second, cgt_play** out) {
    return guarded([&] {
        need(ctx, "context");
        need(out, "out");
        need(sum, "sum");
        auto g = cgt::parse_sum(sum, ctx->catalog);
        auto side = [](int human) { return human ? cgt::Side::Human : cgt::Side::Engine; };
        auto p = std::make_unique<cgt_play>();
        p->session = std::make_unique<cgt::PlaySession>(std::move(g), ctx->memo, side(human_first),
                                                        side(human_second));
        *out = p.release();
        return CGT_OK;
    });
}

void cgt_play_free(cgt_play* p) { delete p; }

cgt_status cgt_play_prompt(const cgt_play* p, char** out) {
    return guarded([&] {
        need(p, "session");
        need(out, "out");
        *out = dup(p->session->prompt());
        return CGT_OK;
    });
}

cgt_status cgt_play_input(cgt_play* p, const char* line) {
    return guarded([&] {
        need(p, "session");
        need(line, "line");
        p->session->input(line);
        return CGT_OK;
    });
}

cgt_status cgt_play_output(cgt_play* p, char** out) {
    return guarded([&] {
        need(p, "session");
        need(out, "out");
        *out = dup(p->session->take_output());
        return CGT_OK;
    });
}

int cgt_play_finished(const cgt_play* p) { return p && p->session->finished() ? 1 : 0; }

void cgt_play_abort(cgt_play* p) {
    if (p) p->session->abort();
}

cgt_status cgt_play_transcript(const cgt_play* p, char** out) {
    return guarded([&] {
        need(p, "session");
        need(out, "out");
        std::string s;
        for (const auto& line : p->session->transcript()) s += line + "\n";
        *out = dup(s);
        return CGT_OK;
    });
}

}  // extern "C"
