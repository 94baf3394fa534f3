#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cgt/solver.hpp"

namespace cgt {

enum class Side { Human, Engine };

/// One completed move.
struct PlayRecord {
    std::size_t mover = 0;  // 0 = first player
    std::size_t component = 0;
    /// Child chosen at each enforce node on the way down, by the non-mover.
    std::vector<std::string> enforced;
    std::string ruleset;  // leaf the move was made under
    Position from, to;
};

/// Turn loop over a sum. Each move: the mover picks a component; at every
/// enforce node of its expression the other player picks a child; at every
/// select node the mover picks; at the leaf the mover picks a target. Nothing
/// carries over to the next move. A player who cannot move loses.
///
/// Line-driven: prompt() is the question for the human whose decision is
/// pending; input() answers it. Engine decisions are made as soon as they
/// come up.
class PlaySession {
public:
    PlaySession(SumGame game, MemoStore& memo, Side first, Side second);

    bool finished() const noexcept { return stage_ == Stage::Finished; }
    bool aborted() const noexcept { return aborted_; }
    /// Winner index when finished normally.
    std::optional<std::size_t> winner() const noexcept { return winner_; }

    const std::string& prompt() const noexcept { return prompt_; }
    /// Answers the pending prompt. An invalid answer leaves the prompt in
    /// place and explains why (including the legal choices) in the output.
    void input(std::string_view line);
    /// End of input: the session stops, transcript intact.
    void abort();

    /// Messages since the last call.
    std::string take_output();

    const SumGame& game() const noexcept { return game_; }
    const std::vector<PlayRecord>& history() const noexcept { return history_; }
    const std::vector<std::string>& transcript() const noexcept { return transcript_; }
    /// Human answers accepted so far; feeding them to a fresh session with
    /// the same sides replays the game.
    const std::vector<std::string>& inputs() const noexcept { return inputs_; }

    std::string player_name(std::size_t i) const;

private:
    enum class Stage { Component, Enforce, Select, Target, Finished };

    void start_turn();
    void descend();
    void advance();
    bool human_decides() const;
    void set_prompt();
    void choose_component(std::size_t c);
    void choose_child(std::size_t i);
    void play_target(const Position& to);
    void finish(std::size_t winner, const std::string& why);
    void say(const std::string& line);
    bool playable(const Expr& node, const Position& pos) const;

    SumGame game_;
    MemoStore* memo_;
    Side sides_[2];
    Stage stage_ = Stage::Component;
    std::size_t mover_ = 0;
    bool aborted_ = false;
    std::optional<std::size_t> winner_;

    // Current move.
    std::size_t component_ = 0;
    Expr node_;
    Nimber needed_ = 0;
    std::optional<MovePlan> plan_;
    std::vector<std::string> enforced_;

    std::string prompt_;
    std::string output_;
    std::vector<PlayRecord> history_;
    std::vector<std::string> transcript_;
    std::vector<std::string> inputs_;
};

}  // namespace cgt
