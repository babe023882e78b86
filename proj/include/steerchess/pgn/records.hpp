#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steerchess/core/termination.hpp"

namespace steerchess::pgn {

// Stage 1 metadata row: header fields plus byte offsets, no move parsing.
// White/Black names and titles ride along for the downstream filters and
// the player-name benchmark restriction.
struct Stage1Record {
    std::string event;
    std::string time_control_name;  // raw TimeControl header, e.g. "300+0"
    std::string utc_date;           // "2013.01.05"
    std::optional<int> year;
    std::optional<int> month;
    std::optional<int> day;
    std::optional<int> tc_delay;      // base seconds
    std::optional<int> tc_increment;  // increment seconds
    std::optional<int> white_elo;
    std::optional<int> black_elo;
    std::optional<int> white_rating_diff;
    std::optional<int> black_rating_diff;
    std::string round;
    std::string result;
    std::string variant;
    std::string eco;
    std::string opening;
    std::string termination;
    std::string annotator;
    bool is_fischer_random = false;
    std::optional<int> eval_depth;
    std::string original_pgn;
    std::uint64_t byte_offset_start = 0;
    std::uint64_t byte_offset_end = 0;
    // utf8 bytes minus codepoints over the game text.
    std::uint64_t utf8_diff = 0;

    std::string white;
    std::string black;
    std::string white_title;
    std::string black_title;
};

// Stage 2 adds the replay-derived fields.
struct Stage2Record {
    Stage1Record stage1;
    int length = 0;  // plies in the mainline
    std::optional<core::TerminationKind> termination_outcome;  // rule-based
    std::optional<core::Color> termination_winner;
    std::string last_comment;
    core::TerminationKind termination_reason = core::TerminationKind::Other;
    std::optional<int> mean_elo;  // floor of the average
    std::optional<int> diff_elo;  // absolute difference
};

std::string to_json_line(const Stage1Record& rec);
std::string to_json_line(const Stage2Record& rec);
Stage1Record stage1_from_json(const std::string& line);
Stage2Record stage2_from_json(const std::string& line);

}  // namespace steerchess::pgn
