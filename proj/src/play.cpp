#include "cgt/play.hpp"

#include <algorithm>
#include <cctype>

#include "cgt/errors.hpp"
#include "cgt/parse.hpp"
#include "cgt/report.hpp"

namespace cgt {

namespace {

std::string trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

std::optional<std::size_t> parse_index(const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        return std::nullopt;
    if (s.size() > 9) return std::nullopt;
    return static_cast<std::size_t>(std::stoul(s));
}

std::string list_positions(const std::vector<Position>& ps) {
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? " " : "") + ps[i].sum_str();
    return s;
}

}  // namespace

PlaySession::PlaySession(SumGame game, MemoStore& memo, Side first, Side second)
    : game_(std::move(game)), memo_(&memo), sides_{first, second}, node_(game_.components.at(0).expr) {
    say("sum: " + game_.render());
    start_turn();
    advance();
}

std::string PlaySession::player_name(std::size_t i) const {
    return std::string(i == 0 ? "first" : "second") + " player (" + (sides_[i] == Side::Human ? "human" : "engine") +
           ")";
}

void PlaySession::say(const std::string& line) { output_ += line + "\n"; }

std::string PlaySession::take_output() {
    std::string out;
    out.swap(output_);
    return out;
}

bool PlaySession::playable(const Expr& node, const Position& pos) const {
    if (node.is_base()) return !node.ruleset().options(pos).empty();
    bool any = false, all = true;
    for (const Expr& c : node.children()) {
        bool v = playable(c, pos);
        any = any || v;
        all = all && v;
    }
    return node.is_select() ? any : all;
}

void PlaySession::finish(std::size_t winner, const std::string& why) {
    stage_ = Stage::Finished;
    winner_ = winner;
    prompt_.clear();
    const std::string line = why + "; " + player_name(winner) + " wins";
    transcript_.push_back(line);
    say(line);
}

void PlaySession::start_turn() {
    enforced_.clear();
    plan_.reset();
    bool any = false;
    for (const auto& c : game_.components) any = any || playable(c.expr, c.pos);
    if (!any) {
        finish(1 - mover_, player_name(mover_) + " has no move");
        return;
    }
    stage_ = Stage::Component;
    if (sides_[mover_] == Side::Engine) {
        MoveAdvice advice = best_move(game_, *memo_);
        if (!advice.losing) {
            plan_ = std::move(advice.plan);
            choose_component(advice.component);
        } else {
            for (std::size_t c = 0; c < game_.components.size(); ++c)
                if (playable(game_.components[c].expr, game_.components[c].pos)) {
                    choose_component(c);
                    break;
                }
        }
    }
}

void PlaySession::choose_component(std::size_t c) {
    component_ = c;
    const SumComponent& comp = game_.components[c];
    node_ = comp.expr;
    const SumValues v = evaluate_sum(game_, *memo_);
    needed_ = v.total ^ v.values[c];
    say(player_name(mover_) + " picks component " + std::to_string(c) + " (" + comp.expr.render() + " at " +
        format_position(comp.pos) + ")");
    descend();
}

// Walks down until a decision is pending or the leaf is reached.
void PlaySession::descend() {
    if (node_.is_enforce()) {
        stage_ = Stage::Enforce;
        if (sides_[1 - mover_] == Side::Engine) {
            const auto& pos = game_.components[component_].pos;
            auto adv = choose_enforcement(game_.components[component_].expr, node_, pos, needed_, *memo_);
            choose_child(adv.child);
        }
        return;
    }
    if (node_.is_select()) {
        stage_ = Stage::Select;
        if (sides_[mover_] == Side::Engine) {
            if (plan_) {
                choose_child(plan_->chosen);
            } else {
                const auto& pos = game_.components[component_].pos;
                const auto& kids = node_.children();
                std::size_t i = 0;
                while (i + 1 < kids.size() && !playable(kids[i], pos)) ++i;
                choose_child(i);
            }
        }
        return;
    }
    stage_ = Stage::Target;
    const auto& pos = game_.components[component_].pos;
    const auto opts = node_.ruleset().options(pos);
    if (opts.empty()) {
        const std::string line = player_name(mover_) + " has no " + node_.ruleset().name() + " move from " +
                                 format_position(pos);
        finish(1 - mover_, line);
        return;
    }
    if (sides_[mover_] == Side::Engine) {
        if (plan_ && plan_->target)
            play_target(*plan_->target);
        else
            play_target(*std::min_element(opts.begin(), opts.end(), SmallestFirst{}));
    }
}

void PlaySession::choose_child(std::size_t i) {
    const Expr child = node_.children().at(i);
    if (node_.is_enforce()) {
        enforced_.push_back(child.render());
        say(player_name(1 - mover_) + " enforces " + child.render());
        if (plan_) plan_ = MovePlan(plan_->children.at(i));
    } else {
        say(player_name(mover_) + " selects " + child.render());
        if (plan_) plan_ = MovePlan(plan_->children.front());
    }
    node_ = child;
    descend();
}

void PlaySession::play_target(const Position& to) {
    SumComponent& comp = game_.components[component_];
    PlayRecord rec{mover_, component_, enforced_, node_.ruleset().name(), comp.pos, to};
    std::string line = player_name(mover_) + ": component " + std::to_string(component_);
    if (!enforced_.empty()) {
        line += " under";
        for (const auto& e : enforced_) line += " " + e;
    }
    line += ", " + node_.ruleset().name() + " " + format_position(comp.pos) + " -> " + format_position(to);
    transcript_.push_back(line);
    say(line);
    comp.pos = to;
    history_.push_back(std::move(rec));
    mover_ = 1 - mover_;
    start_turn();
}

bool PlaySession::human_decides() const {
    switch (stage_) {
        case Stage::Component:
        case Stage::Select:
        case Stage::Target:
            return sides_[mover_] == Side::Human;
        case Stage::Enforce:
            return sides_[1 - mover_] == Side::Human;
        case Stage::Finished:
            return false;
    }
    return false;
}

void PlaySession::set_prompt() {
    prompt_.clear();
    if (!human_decides()) return;
    const auto& pos = game_.components[component_].pos;
    switch (stage_) {
        case Stage::Component: {
            prompt_ = player_name(mover_) + ", pick a component:";
            for (std::size_t i = 0; i < game_.components.size(); ++i)
                prompt_ += " [" + std::to_string(i) + "] " + game_.components[i].expr.render() + " at " +
                           format_position(game_.components[i].pos);
            break;
        }
        case Stage::Enforce:
        case Stage::Select: {
            const bool enf = stage_ == Stage::Enforce;
            prompt_ = player_name(enf ? 1 - mover_ : mover_) + (enf ? ", enforce a ruleset:" : ", select a ruleset:");
            for (std::size_t i = 0; i < node_.children().size(); ++i)
                prompt_ += " [" + std::to_string(i) + "] " + node_.children()[i].render();
            break;
        }
        case Stage::Target:
            prompt_ = player_name(mover_) + ", move under " + node_.ruleset().name() + " from " + pos.sum_str() +
                      " (x;y):";
            break;
        case Stage::Finished:
            break;
    }
}

void PlaySession::advance() { set_prompt(); }

void PlaySession::input(std::string_view raw) {
    if (finished() || !human_decides()) throw UsageError("no decision is pending");
    const std::string line = trim(raw);
    switch (stage_) {
        case Stage::Component: {
            auto i = parse_index(line);
            if (!i || *i >= game_.components.size()) {
                say("unknown component '" + line + "'; enter 0.." + std::to_string(game_.components.size() - 1));
                return;
            }
            if (!playable(game_.components[*i].expr, game_.components[*i].pos)) {
                say("component " + line + " has no move that survives every enforcement; pick another");
                return;
            }
            inputs_.push_back(line);
            choose_component(*i);
            break;
        }
        case Stage::Enforce:
        case Stage::Select: {
            const auto& kids = node_.children();
            std::optional<std::size_t> pick = parse_index(line);
            if (!pick)
                for (std::size_t k = 0; k < kids.size(); ++k)
                    if (kids[k].render() == line) pick = k;
            if (!pick || *pick >= kids.size()) {
                std::string legal;
                for (std::size_t k = 0; k < kids.size(); ++k) legal += (k ? ", " : "") + kids[k].render();
                say("unknown choice '" + line + "'; legal: " + legal);
                return;
            }
            inputs_.push_back(line);
            choose_child(*pick);
            break;
        }
        case Stage::Target: {
            const auto& pos = game_.components[component_].pos;
            const auto opts = node_.ruleset().options(pos);
            std::optional<Position> to;
            try {
                to = parse_position(line);
            } catch (const ParseError&) {
            }
            if (!to || std::find(opts.begin(), opts.end(), *to) == opts.end()) {
                say("illegal move '" + line + "' under " + node_.ruleset().name() + "; legal: " +
                    list_positions(opts));
                return;
            }
            inputs_.push_back(line);
            play_target(*to);
            break;
        }
        case Stage::Finished:
            break;
    }
    advance();
}

void PlaySession::abort() {
    if (finished()) return;
    stage_ = Stage::Finished;
    aborted_ = true;
    prompt_.clear();
    transcript_.push_back("session aborted");
    say("session aborted");
}

}  // namespace cgt
