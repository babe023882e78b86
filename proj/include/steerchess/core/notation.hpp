#pragma once

#include <string>
#include <string_view>

#include "steerchess/core/board.hpp"

namespace steerchess::core {

std::string move_to_uci(const Move& move);

// Throws std::invalid_argument when the text does not name a legal move.
Move uci_to_move(const BoardState& state, std::string_view text);

// Disambiguation-aware SAN, with +/# suffixes.
std::string move_to_san(const BoardState& state, const Move& move);

// Tolerates +/#/!? annotations and "e.p."; throws std::invalid_argument on
// ambiguous SAN or when no legal move matches.
Move san_to_move(const BoardState& state, std::string_view text);

// Accepts either SAN or UCI.
Move parse_move(const BoardState& state, std::string_view text);

}  // namespace steerchess::core
