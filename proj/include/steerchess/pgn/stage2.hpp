#pragma once

#include <optional>
#include <string>
#include <vector>

#include "steerchess/core/board.hpp"
#include "steerchess/pgn/records.hpp"

namespace steerchess::pgn {

// Mainline movetext broken into tokens, before replay.
struct Movetext {
    std::vector<std::string> san_moves;
    // Remaining clock seconds from [%clk h:mm:ss] per ply, absent when the
    // comment carries none.
    std::vector<std::optional<int>> clocks;
    std::string last_comment;
    std::string result_token;  // trailing "1-0" etc. when present
};

// Strips comments, NAGs and recursive variations; collects [%clk] values.
Movetext tokenize_movetext(const std::string& movetext);

// The movetext section of a raw PGN (text after the header lines).
std::string movetext_of(const std::string& original_pgn);

struct ParsedGame {
    Stage2Record record;
    std::vector<std::string> uci_moves;
    std::vector<std::optional<int>> clocks;
};

// Replays the mainline and fills the Table-4 style derived fields. Throws
// std::invalid_argument on corrupt games (unparseable or illegal SAN).
ParsedGame parse_game(const Stage1Record& rec);

// Board positions along the mainline (start position first). Throws on
// illegal moves.
std::vector<core::BoardState> replay_mainline(const std::vector<std::string>& san_moves);

}  // namespace steerchess::pgn
