#pragma once

#include <functional>
#include <istream>
#include <optional>
#include <string_view>

#include "steerchess/pgn/records.hpp"

namespace steerchess::pgn {

struct ScanStats {
    std::uint64_t games = 0;
    std::uint64_t garbage_lines = 0;   // text outside any game
    std::uint64_t truncated_games = 0; // header section with no movetext at EOF
};

// Splits concatenated PGN games into Stage 1 records without parsing move
// trees. A game spans from its first header line up to (excluding) the next
// game's first header line, so trailing blank lines belong to the game that
// precedes them and recovered games concatenate back to the input bytes.
// Emits records in file order via `sink`; returns counts.
ScanStats scan_headers(std::istream& in,
                       const std::function<void(Stage1Record&&)>& sink);

// "B+I" -> (base, increment); "-" or malformed -> nullopt.
std::optional<std::pair<int, int>> parse_time_control(std::string_view text);

}  // namespace steerchess::pgn
