#pragma once

#include <cstdint>
#include <vector>

#include "steerchess/core/board.hpp"

namespace steerchess::core {

bool is_square_attacked(const BoardState& state, Square sq, Color by);

bool in_check(const BoardState& state);

// Complete, duplicate-free list of legal moves; empty on mate/stalemate.
std::vector<Move> legal_moves(const BoardState& state);

bool is_legal(const BoardState& state, const Move& move);

// Applies a legal move; throws std::invalid_argument otherwise.
BoardState apply_move(const BoardState& state, const Move& move);

// As apply_move but skips the legality check. Callers must have obtained
// `move` from legal_moves on the same state.
BoardState apply_move_unchecked(const BoardState& state, const Move& move);

std::uint64_t perft(const BoardState& state, int depth);

}  // namespace steerchess::core
