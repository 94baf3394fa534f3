// Command-line front end. Uses the C interface only.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cgt/cgt.h"

namespace {

int exit_code(cgt_status s) {
    switch (s) {
        case CGT_OK:
            return 0;
        case CGT_FALSE:
            return 1;
        case CGT_ERR_USAGE:
        case CGT_ERR_PARSE:
        case CGT_ERR_GUARD:
            return 2;
        case CGT_ERR_TERMINATION:
            return 3;
        case CGT_ERR_INTERNAL:
            return 4;
    }
    return 4;
}

std::string take(char* s) {
    std::string out = s ? s : "";
    cgt_string_free(s);
    return out;
}

// Prints the report (if any) and the error message for failures.
// The report pointer is read after the call has filled it.
int finish(cgt_status s, char*& report) {
    std::string text = take(report);
    report = nullptr;
    std::cout << text;
    if (s != CGT_OK && s != CGT_FALSE) {
        std::string msg = cgt_last_error();
        if (!msg.empty()) std::cerr << "error: " << msg << '\n';
    }
    return exit_code(s);
}

int fail(cgt_status s) {
    char* none = nullptr;
    return finish(s, none);
}

struct Size {
    std::uint64_t width = 0, height = 0;
};

bool parse_size(const std::string& text, Size& out) {
    auto x = text.find_first_of("xX");
    try {
        std::size_t used = 0;
        if (x == std::string::npos) {
            out.width = std::stoull(text, &used);
            out.height = out.width;
            return used == text.size();
        }
        std::string w = text.substr(0, x), h = text.substr(x + 1);
        out.width = std::stoull(w, &used);
        if (used != w.size()) return false;
        out.height = std::stoull(h, &used);
        return used == h.size();
    } catch (const std::exception&) {
        return false;
    }
}

int run_play(cgt_context* ctx, const std::string& sum, bool human_first, bool human_second,
             const std::string& transcript_path) {
    cgt_play* p = nullptr;
    cgt_status s = cgt_play_new(ctx, sum.c_str(), human_first, human_second, &p);
    if (s != CGT_OK) return fail(s);

    auto flush = [&] {
        char* out = nullptr;
        cgt_play_output(p, &out);
        std::cout << take(out);
    };
    std::string line;
    for (;;) {
        flush();
        if (cgt_play_finished(p)) break;
        char* prompt = nullptr;
        cgt_play_prompt(p, &prompt);
        std::cout << take(prompt) << ' ' << std::flush;
        if (!std::getline(std::cin, line)) {
            std::cout << '\n';
            cgt_play_abort(p);
            continue;
        }
        s = cgt_play_input(p, line.c_str());
        if (s != CGT_OK) {
            std::cerr << "error: " << cgt_last_error() << '\n';
            break;
        }
    }
    char* t = nullptr;
    cgt_play_transcript(p, &t);
    std::string transcript = take(t);
    cgt_play_free(p);
    if (!transcript_path.empty()) {
        std::ofstream f(transcript_path);
        if (!f) {
            std::cerr << "error: cannot write " << transcript_path << '\n';
            return 2;
        }
        f << transcript;
    } else {
        std::cout << "transcript:\n" << transcript;
    }
    return exit_code(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Impartial rulesets under the enforce and select operators"};
    app.require_subcommand(1);
    std::string config;
    app.add_option("--config", config, "Ruleset definitions file")->check(CLI::ExistingFile);

    std::string expr, a, b, c, sum, at, format = "ascii", analysis = "outcome", size_text = "11x11", law;
    std::string candidate, first = "human", second = "engine", transcript;
    std::uint64_t region = 11, seed = 1;
    std::size_t tuples = 10;
    bool json = false, strong = false, nimbers = false;

    auto* grid = app.add_subcommand("grid", "Outcome or nimber grid of an expression");
    grid->add_option("--expr", expr, "Expression")->required();
    grid->add_option("--analysis", analysis, "outcome, grundy or enforce_grundy")
        ->check(CLI::IsMember({"outcome", "grundy", "enforce_grundy"}));
    grid->add_option("--size", size_text, "WxH, columns by rows")->capture_default_str();
    grid->add_option("--format", format, "ascii, csv or json")->check(CLI::IsMember({"ascii", "csv", "json"}));

    auto* dominate = app.add_subcommand("dominate", "Domination of --a over --b on [0,N-1]^2");
    dominate->add_option("--a", a, "Dominating ruleset expression")->required();
    dominate->add_option("--b", b, "Dominated ruleset expression")->required();
    dominate->add_option("--c", c, "Third ruleset: check the three-cycle a, b, c");
    dominate->add_option("--region", region, "Side N of the region")->capture_default_str();
    dominate->add_flag("--strong", strong, "Search for a C breaking strong domination");
    dominate->add_option("--candidate", candidate, "The C for --strong (default: catalog pool)");
    dominate->add_flag("--nimbers", nimbers, "Compare enforce nimbers of a.b with nimbers of a instead");
    dominate->add_flag("--json", json);

    auto* laws = app.add_subcommand("laws", "Algebraic laws on sampled or given operands");
    laws->add_option("--law", law, "One law by name; operands from --a/--b/--c");
    laws->add_option("--a", a);
    laws->add_option("--b", b);
    laws->add_option("--c", c);
    laws->add_option("--seed", seed, "Seed for operand sampling")->capture_default_str();
    laws->add_option("--tuples", tuples, "Sampled operand tuples")->capture_default_str();
    laws->add_option("--region", region, "Side N of the region")->capture_default_str();
    laws->add_flag("--json", json);

    auto* solve = app.add_subcommand("solve", "Values and advice for a sum");
    solve->add_option("--sum", sum, "e.g. bishop.nim@3;1,knight.nim@5;2")->required();
    solve->add_flag("--json", json);

    auto* play = app.add_subcommand("play", "Play a sum on standard input");
    play->add_option("--sum", sum, "Starting sum")->required();
    play->add_option("--first", first, "human or engine")->check(CLI::IsMember({"human", "engine"}));
    play->add_option("--second", second, "human or engine")->check(CLI::IsMember({"human", "engine"}));
    play->add_option("--transcript", transcript, "Write the transcript here instead of stdout");

    auto* check = app.add_subcommand("check", "Shortness from a position");
    check->add_option("--expr", expr, "Expression")->required();
    check->add_option("--at", at, "Position, e.g. 3;1")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cgt_context* ctx = nullptr;
    if (cgt_context_new(&ctx) != CGT_OK) return fail(CGT_ERR_INTERNAL);
    struct Guard {
        cgt_context* ctx;
        ~Guard() { cgt_context_free(ctx); }
    } guard{ctx};
    if (!config.empty()) {
        cgt_status s = cgt_context_load_config(ctx, config.c_str());
        if (s != CGT_OK) return fail(s);
    }

    char* report = nullptr;
    if (*grid) {
        Size sz;
        if (!parse_size(size_text, sz)) {
            std::cerr << "error: --size expects WxH, got '" << size_text << "'\n";
            return 2;
        }
        char* note = nullptr;
        cgt_status s = cgt_grid(ctx, expr.c_str(), analysis.c_str(), sz.width, sz.height, format.c_str(), &report,
                                &note);
        std::string n = take(note);
        if (!n.empty()) std::cerr << "note: " << n << '\n';
        return finish(s, report);
    }
    if (*dominate) {
        if (!c.empty())
            return finish(cgt_three_cycle(ctx, a.c_str(), b.c_str(), c.c_str(), region, &report), report);
        if (strong)
            return finish(cgt_strong(ctx, a.c_str(), b.c_str(), candidate.empty() ? nullptr : candidate.c_str(),
                                     region, json, &report), report);
        if (nimbers) return finish(cgt_compare_nimbers(ctx, a.c_str(), b.c_str(), region, json, &report), report);
        return finish(cgt_dominate(ctx, a.c_str(), b.c_str(), region, json, &report), report);
    }
    if (*laws) {
        if (law.empty()) return finish(cgt_laws_sampled(ctx, seed, tuples, region, json, &report), report);
        std::string ops = a;
        for (const std::string* o : {&b, &c})
            if (!o->empty()) ops += "|" + *o;
        return finish(cgt_law(ctx, law.c_str(), ops.c_str(), region, json, &report), report);
    }
    if (*solve) return finish(cgt_solve(ctx, sum.c_str(), json, &report), report);
    if (*play) return run_play(ctx, sum, first == "human", second == "human", transcript);
    if (*check) return finish(cgt_check(ctx, expr.c_str(), at.c_str(), &report), report);
    return 2;
}
