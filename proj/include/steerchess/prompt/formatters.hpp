#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steerchess/core/board.hpp"

namespace steerchess::prompt {

struct ClockInfo {
    // Whole seconds, rendered with an "s" suffix.
    long active_last_move_s = 0;
    long opponent_last_move_s = 0;
    long active_remaining_s = 0;
    long opponent_remaining_s = 0;
};

// Game metadata a template draws from. All fields optional; formatters
// return nothing when their inputs are missing.
struct MetadataContext {
    std::optional<int> white_elo;
    std::optional<int> black_elo;
    std::optional<std::string> white_title;  // "GM", "IM", "LM", "BOT", ...
    std::optional<std::string> black_title;
    std::optional<std::string> white_alias;  // account name
    std::optional<std::string> black_alias;
    std::optional<std::string> white_name;   // real name, when known
    std::optional<std::string> black_name;
    std::optional<int> tc_base_seconds;
    std::optional<int> tc_increment_seconds;
    std::optional<bool> rated;
    std::optional<std::string> time_control_category;  // "Blitz", "Rapid", ...
    std::optional<std::string> date;                   // PGN form "2023.01.15"
    std::optional<std::string> opening_name;
    std::vector<std::string> opening_moves_san;
    std::optional<core::Color> side;
    std::optional<ClockInfo> clocks;
    std::optional<std::string> result;
    std::optional<int> elo_override;  // fills the bare {elo} placeholder
};

// "5 minutes", "1 hour, 1 minute, and 1 second", "45 seconds".
std::string duration_text(long seconds);

// Duration plus the increment clause: "5 minutes with no additional
// increment", "3 minutes with 2 seconds of increment".
std::string format_time_control(long base_seconds, long increment_seconds);

// Time-control category estimated the way Lichess buckets clocks
// (base + 40x increment): UltraBullet, Bullet, Blitz, Rapid, Classical.
std::string time_control_category(long base_seconds, long increment_seconds);

// The names every template placeholder must come from.
const std::vector<std::string>& field_catalog();

// Field value for `name` from the context; nullopt when the inputs that
// feed it are missing.
std::optional<std::string> format_field(std::string_view name,
                                        const MetadataContext& ctx);

// Fixed four-line PGN-style header naming two grandmasters, with the
// trailing blank line.
std::string gm_header();

// Five-line PGN-style header with "???" player names, Elo fields and the
// raw time control, with the trailing blank line.
std::string elo_tc_header(int white_elo, int black_elo, std::string_view time_control);

// One-sentence metadata prompt used on metadata-conditioned benchmarks.
// Requires elos, category, and time control; throws std::invalid_argument
// when any are missing.
std::string metadata_prompt(const MetadataContext& ctx);

// Time-control sentence, plus the four-field clock sentence when clock
// annotations are present. Leading space included: this is appended to a
// prompt.
std::string aux_suffix(const MetadataContext& ctx);

}  // namespace steerchess::prompt
